// Tests for the synthetic-corpus generator and the staged pipeline.

#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "core/errors.h"
#include "graph/graph_io.h"
#include "pipeline/config.h"
#include "pipeline/stages.h"
#include "pipeline/synth.h"
#include "score/musicxml_reader.h"

namespace melograph {
namespace {

namespace fs = std::filesystem;

std::string readText(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

class PipelineTest : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("melograph-pipe-" +
             std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  PipelineConfig makeCorpus(int pieces, int styles, const std::string& out_name,
                            int k_max = 12) {
    SynthOptions options;
    options.pieces = pieces;
    options.styles = styles;
    options.seed = 11;
    options.out_dir = root_;
    options.emit_config = false;
    generateSyntheticCorpus(options);
    nlohmann::json config_json;
    config_json["corpus_manifest"] = "corpus.json";
    config_json["output_dir"] = out_name;
    config_json["graph"] = {{"k_min", 2}, {"k_max", k_max}, {"operating_k", std::min(8, k_max)}};
    PipelineConfig config =
        PipelineConfig::fromJsonText(config_json.dump(), root_);
    return config;
  }

  fs::path root_;
};

TEST(SynthRoundTrip, GeneratedXmlParsesBackToSameNotes) {
  std::mt19937_64 rng(271);
  for (int trial = 0; trial < 10; ++trial) {
    int family = trial % 5;
    auto notes = synthPiece(family, 5, 1000 + static_cast<std::uint64_t>(trial), 6);
    std::string xml = synthToMusicXml(notes, "t", "Style");
    NoteMatrix parsed = parseMusicXml(xml);
    ASSERT_EQ(parsed.events.size(), notes.size()) << "trial " << trial;
    for (std::size_t i = 0; i < notes.size(); ++i) {
      EXPECT_EQ(parsed.events[i].midi_pitch, notes[i].midi);
      EXPECT_EQ(parsed.events[i].onset_global, Beats(notes[i].onset_div, 4));
      EXPECT_EQ(parsed.events[i].duration, Beats(notes[i].dur_div, 4));
    }
  }
}

TEST(SynthCorpus, FamiliesShareMotifsAcrossVariants) {
  // Two pieces of one family draw on the same motif pool: their interval
  // multisets overlap much more than pieces from different families.
  auto intervalSet = [](const std::vector<SynthNote>& notes) {
    std::multiset<int> intervals;
    for (std::size_t i = 1; i < notes.size(); ++i) {
      intervals.insert(notes[i].midi - notes[i - 1].midi);
    }
    return intervals;
  };
  auto overlap = [](const std::multiset<int>& a, const std::multiset<int>& b) {
    std::multiset<int> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(common, common.begin()));
    return static_cast<double>(common.size()) / static_cast<double>(std::max(a.size(), b.size()));
  };
  auto fam0_a = intervalSet(synthPiece(0, 5, 1, 18));
  auto fam0_b = intervalSet(synthPiece(0, 5, 2, 18));
  auto fam3 = intervalSet(synthPiece(3, 5, 3, 18));
  EXPECT_GT(overlap(fam0_a, fam0_b), overlap(fam0_a, fam3));
}

TEST_F(PipelineTest, AllStagesProduceHashChainedArtifacts) {
  PipelineConfig config = makeCorpus(3, 3, "out");
  auto outcomes = runAll(config);
  EXPECT_EQ(outcomes.size(), 10u);
  for (StageOutcome outcome : outcomes) EXPECT_EQ(outcome, StageOutcome::Computed);

  for (Stage stage : allStages()) {
    fs::path dir = config.output_dir / stageName(stage);
    EXPECT_TRUE(fs::exists(dir / "metadata.json")) << stageName(stage);
    nlohmann::json meta = nlohmann::json::parse(readText(dir / "metadata.json"));
    EXPECT_EQ(meta.at("stage").get<std::string>(), stageName(stage));
    EXPECT_EQ(meta.at("config_hash").get<std::string>().size(), 16u);
  }

  // Rerun with unchanged config: every stage is a cache hit.
  auto again = runAll(config);
  for (StageOutcome outcome : again) EXPECT_EQ(outcome, StageOutcome::Cached);
}

TEST_F(PipelineTest, ChangingWlHInvalidatesSweepOnward) {
  PipelineConfig config = makeCorpus(3, 3, "out");
  runAll(config);
  PipelineConfig changed = config;
  changed.wl_h = 4;
  auto outcomes = runAll(changed);
  const auto& stages = allStages();
  for (std::size_t i = 0; i < stages.size(); ++i) {
    bool upstream_of_wl = stages[i] == Stage::Ingest || stages[i] == Stage::Annotate ||
                          stages[i] == Stage::Segment || stages[i] == Stage::Dtw ||
                          stages[i] == Stage::Graph;
    EXPECT_EQ(outcomes[i], upstream_of_wl ? StageOutcome::Cached : StageOutcome::Computed)
        << stageName(stages[i]);
  }
}

TEST_F(PipelineTest, MissingUpstreamNamesTheStageToRun) {
  PipelineConfig config = makeCorpus(3, 3, "out");
  try {
    runStage(config, Stage::Sweep);
    FAIL() << "expected DependencyError";
  } catch (const DependencyError& e) {
    EXPECT_NE(std::string(e.what()).find("dtw"), std::string::npos) << e.what();
  }
}

TEST_F(PipelineTest, StaleUpstreamRefusedWithExplanation) {
  PipelineConfig config = makeCorpus(3, 3, "out");
  runAll(config);
  PipelineConfig changed = config;
  changed.segmenter.w_onset = 3.5;
  // segment (and everything beyond) is now stale; running graph directly
  // must refuse rather than silently reuse.
  try {
    runStage(changed, Stage::Graph);
    FAIL() << "expected StaleCacheError";
  } catch (const StaleCacheError& e) {
    EXPECT_NE(std::string(e.what()).find("different configuration"), std::string::npos);
  }
}

TEST_F(PipelineTest, ReportAggregatesStageOutputsConsistently) {
  PipelineConfig config = makeCorpus(3, 3, "out");
  runAll(config);
  writeReport(config);
  nlohmann::json summary =
      nlohmann::json::parse(readText(config.output_dir / "summary.json"));

  // 11 k-levels for the default 2..12 sweep.
  EXPECT_EQ(summary.at("k_levels").size(), 11u);

  // Cluster table row count equals corpus size.
  EXPECT_EQ(summary.at("clusters").size(), 3u);

  // Cross-file consistency: summary values equal the stage CSVs they
  // aggregate.
  std::istringstream sweep_csv(readText(config.output_dir / "sweep" / "sweep.csv"));
  std::string line;
  std::getline(sweep_csv, line);  // header
  std::size_t row = 0;
  while (std::getline(sweep_csv, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    EXPECT_EQ(std::stoi(field), summary.at("k_levels")[row].at("k").get<int>());
    std::getline(fields, field, ',');
    EXPECT_DOUBLE_EQ(std::stod(field),
                     summary.at("k_levels")[row].at("mean_intra").get<double>());
    std::getline(fields, field, ',');
    EXPECT_DOUBLE_EQ(std::stod(field),
                     summary.at("k_levels")[row].at("mean_inter").get<double>());
    ++row;
  }
  EXPECT_EQ(row, 11u);

  std::istringstream clusters_csv(readText(config.output_dir / "cluster" / "clusters.csv"));
  std::getline(clusters_csv, line);
  std::size_t cluster_rows = 0;
  while (std::getline(clusters_csv, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string composer, piece, label;
    std::getline(fields, composer, ',');
    std::getline(fields, piece, ',');
    std::getline(fields, label, ',');
    const auto& srow = summary.at("clusters")[cluster_rows];
    EXPECT_EQ(composer, srow.at("composer").get<std::string>());
    EXPECT_EQ(piece, srow.at("piece").get<std::string>());
    EXPECT_EQ(std::stoi(label), srow.at("label").get<int>());
    ++cluster_rows;
  }
  EXPECT_EQ(cluster_rows, 3u);
  EXPECT_TRUE(fs::exists(config.output_dir / "summary.txt"));
}

TEST_F(PipelineTest, ReportWithoutClusterStageRefused) {
  PipelineConfig config = makeCorpus(3, 3, "out");
  EXPECT_THROW(writeReport(config), DependencyError);
}

TEST_F(PipelineTest, OperatingKGraphsAreConnected) {
  PipelineConfig config = makeCorpus(4, 2, "out");
  for (Stage stage : {Stage::Ingest, Stage::Annotate, Stage::Segment, Stage::Dtw,
                      Stage::Graph}) {
    runStage(config, stage);
  }
  for (int i = 0; i < 4; ++i) {
    std::string piece = "synth-" + std::to_string(i);
    SegmentGraph g = graphFromGraphml(
        readText(config.output_dir / "graph" / (piece + ".graphml")));
    EXPECT_TRUE(g.connected()) << piece;
    EXPECT_EQ(g.k, 8);
  }
}

TEST_F(PipelineTest, LockForbidsConcurrentRuns) {
  fs::path out = root_ / "locked";
  PipelineLock lock(out);
  EXPECT_THROW(PipelineLock second(out), MelographError);
}

TEST_F(PipelineTest, LockReleasedOnDestruction) {
  fs::path out = root_ / "locked";
  { PipelineLock lock(out); }
  EXPECT_NO_THROW(PipelineLock again(out));
}

TEST_F(PipelineTest, ConfigValidation) {
  nlohmann::json bad;
  bad["corpus_manifest"] = "corpus.json";
  bad["graph"] = {{"k_min", 2}, {"k_max", 12}, {"operating_k", 13}};
  EXPECT_THROW(PipelineConfig::fromJsonText(bad.dump(), root_), ArgumentError);
  bad["graph"] = {{"k_min", 5}, {"k_max", 4}, {"operating_k", 5}};
  EXPECT_THROW(PipelineConfig::fromJsonText(bad.dump(), root_), ArgumentError);
  EXPECT_THROW(PipelineConfig::fromJsonText("{not json", root_), ParseError);
}

TEST_F(PipelineTest, ManifestValidation) {
  nlohmann::json manifest;
  manifest["pieces"] = {{{"path", "a.xml"}, {"piece_id", "bad id!"}}};
  fs::path file = root_ / "bad-manifest.json";
  std::ofstream(file) << manifest.dump();
  EXPECT_THROW(loadManifest(file), ArgumentError);

  manifest["pieces"] = {{{"path", "a.xml"}, {"piece_id", "dup"}},
                        {{"path", "b.xml"}, {"piece_id", "dup"}}};
  std::ofstream(file, std::ios::trunc) << manifest.dump();
  EXPECT_THROW(loadManifest(file), ArgumentError);
}

}  // namespace
}  // namespace melograph
