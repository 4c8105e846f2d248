#include "pipeline/stages.h"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "analysis/heatmap.h"
#include "analysis/stats.h"
#include "analysis/sweep.h"
#include "analysis/wl_kernel.h"
#include "core/errors.h"
#include "core/hashing.h"
#include "dtw/features.h"
#include "dtw/pairwise.h"
#include "embed/graph2vec.h"
#include "embed/kmeans.h"
#include "embed/pca.h"
#include "embed/smacof.h"
#include "graph/graph_io.h"
#include "graph/knn.h"
#include "ir/ir_classifier.h"
#include "score/melody_select.h"
#include "score/musicxml_reader.h"
#include "segment/gestalt.h"

namespace melograph {

namespace {

// ---------------------------------------------------------------------------
// Small file helpers
// ---------------------------------------------------------------------------

std::string readFileText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MelographError("cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void writeFileText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw MelographError("failed writing " + path.string());
}

std::string isoTimestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buffer;
}

// ---------------------------------------------------------------------------
// Stage naming and hash chain
// ---------------------------------------------------------------------------

struct StageInfo {
  Stage stage;
  const char* name;
};

constexpr StageInfo kStages[] = {
    {Stage::Ingest, "ingest"},   {Stage::Annotate, "annotate"},
    {Stage::Segment, "segment"}, {Stage::Dtw, "dtw"},
    {Stage::Graph, "graph"},     {Stage::Sweep, "sweep"},
    {Stage::Heatmap, "heatmap"}, {Stage::Mds, "mds"},
    {Stage::Embed, "embed"},     {Stage::Cluster, "cluster"},
};

std::uint64_t mix(std::uint64_t state, const std::string& text) {
  state = fnv1a64(text, state);
  return fnv1a64("|", state);
}

/// Stage-relevant configuration digest, chained through upstream stages so
/// a change invalidates exactly the stages whose inputs it affects.
std::uint64_t stageHash(const PipelineConfig& config, Stage stage) {
  switch (stage) {
    case Stage::Ingest: {
      std::uint64_t h = kFnvOffset;
      h = mix(h, "ingest-v1");
      h = mix(h, readFileText(config.corpus_manifest));
      h = mix(h, config.melody_rule);
      for (const PieceEntry& piece : loadManifest(config.corpus_manifest)) {
        h = mix(h, piece.piece_id);
        h = mix(h, readFileText(piece.path));
      }
      return h;
    }
    case Stage::Annotate:
      return mix(stageHash(config, Stage::Ingest), "annotate-v1");
    case Stage::Segment: {
      std::uint64_t h = mix(stageHash(config, Stage::Annotate), "segment-v1");
      h = mix(h, formatDouble(config.segmenter.w_pitch));
      h = mix(h, formatDouble(config.segmenter.w_onset));
      h = mix(h, std::to_string(config.segmenter.min_notes));
      return h;
    }
    case Stage::Dtw: {
      std::uint64_t h = mix(stageHash(config, Stage::Segment), "dtw-v1");
      h = mix(h, config.dtw.normalize ? "normalized" : "raw");
      return h;
    }
    case Stage::Graph: {
      std::uint64_t h = mix(stageHash(config, Stage::Dtw), "graph-v1");
      h = mix(h, std::to_string(config.graph.operating_k));
      return h;
    }
    case Stage::Sweep: {
      std::uint64_t h = mix(stageHash(config, Stage::Dtw), "sweep-v1");
      h = mix(h, std::to_string(config.graph.k_min));
      h = mix(h, std::to_string(config.graph.k_max));
      h = mix(h, std::to_string(config.wl_h));
      h = mix(h, std::to_string(config.seeds.kl));
      return h;
    }
    case Stage::Heatmap: {
      std::uint64_t h = mix(stageHash(config, Stage::Graph), "heatmap-v1");
      h = mix(h, std::to_string(config.wl_h));
      for (const PieceEntry& piece : loadManifest(config.corpus_manifest)) {
        h = mix(h, piece.piece_id + "=" + piece.group);
      }
      return h;
    }
    case Stage::Mds: {
      std::uint64_t h = mix(stageHash(config, Stage::Heatmap), "mds-v1");
      h = mix(h, std::to_string(config.mds.pairs_per_tier));
      h = mix(h, std::to_string(config.mds.max_iterations));
      h = mix(h, formatDouble(config.mds.tolerance));
      h = mix(h, std::to_string(config.mds.knn_k));
      return h;
    }
    case Stage::Embed: {
      std::uint64_t h = mix(stageHash(config, Stage::Graph), "embed-v1");
      h = mix(h, std::to_string(config.wl_h));
      h = mix(h, std::to_string(config.graph2vec.dim));
      h = mix(h, std::to_string(config.graph2vec.epochs));
      h = mix(h, formatDouble(config.graph2vec.learning_rate));
      h = mix(h, std::to_string(config.graph2vec.negatives));
      h = mix(h, std::to_string(config.seeds.graph2vec));
      return h;
    }
    case Stage::Cluster: {
      std::uint64_t h = mix(stageHash(config, Stage::Embed), "cluster-v1");
      h = mix(h, std::to_string(config.cluster_k));
      h = mix(h, std::to_string(config.seeds.kmeans));
      return h;
    }
  }
  throw ArgumentError("unknown stage");
}

std::filesystem::path stageDir(const PipelineConfig& config, Stage stage) {
  return config.output_dir / stageName(stage);
}

std::optional<std::string> storedStageHash(const PipelineConfig& config, Stage stage) {
  std::filesystem::path meta = stageDir(config, stage) / "metadata.json";
  if (!std::filesystem::exists(meta)) return std::nullopt;
  try {
    nlohmann::json j = nlohmann::json::parse(readFileText(meta));
    return j.at("config_hash").get<std::string>();
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

const std::vector<Stage>& upstreamOf(Stage stage) {
  static const std::map<Stage, std::vector<Stage>> kDeps = {
      {Stage::Ingest, {}},
      {Stage::Annotate, {Stage::Ingest}},
      {Stage::Segment, {Stage::Annotate}},
      {Stage::Dtw, {Stage::Annotate, Stage::Segment}},
      {Stage::Graph, {Stage::Dtw, Stage::Segment}},
      {Stage::Sweep, {Stage::Dtw, Stage::Segment}},
      {Stage::Heatmap, {Stage::Dtw, Stage::Segment}},
      {Stage::Mds, {Stage::Heatmap, Stage::Dtw, Stage::Segment, Stage::Annotate}},
      {Stage::Embed, {Stage::Dtw, Stage::Segment}},
      {Stage::Cluster, {Stage::Embed}},
  };
  return kDeps.at(stage);
}

// ---------------------------------------------------------------------------
// Artifact loading shared by downstream stages
// ---------------------------------------------------------------------------

std::vector<NoteMatrix> loadAnnotated(const PipelineConfig& config,
                                      const std::vector<PieceEntry>& pieces) {
  std::vector<NoteMatrix> matrices;
  matrices.reserve(pieces.size());
  for (const PieceEntry& piece : pieces) {
    std::filesystem::path file =
        stageDir(config, Stage::Annotate) / (piece.piece_id + ".csv");
    NoteMatrix m = noteMatrixFromCsv(readFileText(file));
    matrices.push_back(std::move(m));
  }
  return matrices;
}

std::vector<Segment> loadSegmentsOf(const PipelineConfig& config, const std::string& piece_id) {
  std::filesystem::path file =
      stageDir(config, Stage::Segment) / (piece_id + ".segments.json");
  nlohmann::json j = nlohmann::json::parse(readFileText(file));
  std::vector<Segment> segments;
  for (const auto& item : j.at("segments")) {
    Segment s;
    s.piece_id = piece_id;
    s.ordinal = item.at("ordinal").get<int>();
    s.begin = item.at("begin").get<std::size_t>();
    s.end = item.at("end").get<std::size_t>();
    if (!item.at("expectancy").is_null()) s.expectancy = item.at("expectancy").get<double>();
    auto dominant = irSymbolFromName(item.at("dominant").get<std::string>());
    auto bin = expectancyBinFromName(item.at("bin").get<std::string>());
    if (!dominant || !bin) throw ParseError("bad segment labels in " + file.string());
    s.dominant = *dominant;
    s.bin = *bin;
    segments.push_back(s);
  }
  return segments;
}

DistanceMatrix loadDistances(const PipelineConfig& config, const std::string& piece_id) {
  std::filesystem::path file =
      stageDir(config, Stage::Dtw) / (piece_id + ".distances.csv");
  return distanceMatrixFromCsv(readFileText(file));
}

SegmentGraph buildLabeledGraph(const PipelineConfig& config, const std::string& piece_id,
                               int k) {
  DistanceMatrix d = loadDistances(config, piece_id);
  std::vector<Segment> segments = loadSegmentsOf(config, piece_id);
  if (segments.size() != d.size()) {
    throw MelographError("segment/distance mismatch for piece " + piece_id);
  }
  if (static_cast<std::size_t>(k) >= d.size()) {
    throw ArgumentError("piece " + piece_id + " has only " + std::to_string(d.size()) +
                        " segments; k=" + std::to_string(k) +
                        " needs more (reduce k_max or lengthen the piece)");
  }
  SegmentGraph g = knnGraph(d, k, piece_id);
  std::vector<ExpectancyBin> bins;
  std::vector<IRSymbol> dominants;
  std::vector<double> expectancies;
  for (const Segment& s : segments) {
    bins.push_back(s.bin);
    dominants.push_back(s.dominant);
    expectancies.push_back(s.expectancy.value_or(0.5));
  }
  labelNodes(g, bins, dominants, expectancies);
  return g;
}

/// Feature sequences for every segment of a piece, in segment order.
std::vector<FeatureSequence> pieceFeatures(const NoteMatrix& matrix,
                                           const std::vector<Segment>& segments,
                                           const FeatureStats& stats,
                                           const ExpectancyStats& expectancy_stats) {
  auto note_e = noteExpectancies(matrix, expectancy_stats);
  std::vector<FeatureSequence> features;
  features.reserve(segments.size());
  for (const Segment& s : segments) {
    features.push_back(segmentFeatures(matrix, s, stats, note_e));
  }
  return features;
}

// ---------------------------------------------------------------------------
// Stage implementations (each writes into a fresh directory)
// ---------------------------------------------------------------------------

using ExtraMetadata = nlohmann::json;

ExtraMetadata runIngest(const PipelineConfig& config, const std::vector<PieceEntry>& pieces,
                        const std::filesystem::path& dir) {
  for (const PieceEntry& piece : pieces) {
    std::string rule_text = piece.melody_rule.empty() ? config.melody_rule : piece.melody_rule;
    auto selection = parseMelodyRule(rule_text);
    if (!selection) {
      throw ArgumentError("piece " + piece.piece_id + ": unknown melody rule '" + rule_text +
                          "'");
    }
    MusicXmlOptions options;
    options.piece_id = piece.piece_id;
    options.composer = piece.composer;
    options.part_id = selection->part_id;
    NoteMatrix raw = parseMusicXml(readFileText(piece.path), options);
    NoteMatrix melody = selectMelody(raw, selection->rule);
    validateNoteMatrix(melody);
    writeFileText(dir / (piece.piece_id + ".csv"), noteMatrixToCsv(melody));
  }
  return {};
}

ExtraMetadata runAnnotate(const PipelineConfig& config, const std::vector<PieceEntry>& pieces,
                          const std::filesystem::path& dir) {
  std::vector<NoteMatrix> matrices;
  for (const PieceEntry& piece : pieces) {
    std::filesystem::path file = stageDir(config, Stage::Ingest) / (piece.piece_id + ".csv");
    matrices.push_back(noteMatrixFromCsv(readFileText(file)));
  }
  ExpectancyStats stats = computeExpectancyStats(matrices);
  writeFileText(dir / "expectancy_stats.json", stats.toJson());
  for (NoteMatrix& m : matrices) {
    m = annotate(std::move(m));
    writeFileText(dir / (m.piece_id + ".csv"), noteMatrixToCsv(m));
  }
  return {};
}

ExtraMetadata runSegment(const PipelineConfig& config, const std::vector<PieceEntry>& pieces,
                         const std::filesystem::path& dir) {
  ExpectancyStats stats = ExpectancyStats::fromJson(
      readFileText(stageDir(config, Stage::Annotate) / "expectancy_stats.json"));
  GestaltWeights weights{config.segmenter.w_pitch, config.segmenter.w_onset};

  std::vector<NoteMatrix> matrices = loadAnnotated(config, pieces);
  std::vector<std::vector<Segment>> per_piece;
  std::vector<Segment*> all;
  for (NoteMatrix& m : matrices) {
    auto note_e = noteExpectancies(m, stats);
    per_piece.push_back(segmentPiece(m, note_e, weights, config.segmenter.min_notes));
  }
  for (auto& segments : per_piece) {
    for (Segment& s : segments) all.push_back(&s);
  }
  assignBins(all);

  for (std::size_t p = 0; p < per_piece.size(); ++p) {
    nlohmann::json j;
    j["piece_id"] = matrices[p].piece_id;
    nlohmann::json list = nlohmann::json::array();
    for (const Segment& s : per_piece[p]) {
      nlohmann::json sj;
      sj["id"] = s.id();
      sj["ordinal"] = s.ordinal;
      sj["begin"] = s.begin;
      sj["end"] = s.end;
      sj["expectancy"] = s.expectancy ? nlohmann::json(*s.expectancy) : nlohmann::json();
      sj["dominant"] = irSymbolName(s.dominant);
      sj["bin"] = expectancyBinName(s.bin);
      sj["label"] = nodeLabel(s.bin, s.dominant);
      list.push_back(sj);
    }
    j["segments"] = list;
    writeFileText(dir / (matrices[p].piece_id + ".segments.json"), j.dump(2) + "\n");
  }
  return {};
}

ExtraMetadata runDtw(const PipelineConfig& config, const std::vector<PieceEntry>& pieces,
                     const std::filesystem::path& dir) {
  ExpectancyStats expectancy_stats = ExpectancyStats::fromJson(
      readFileText(stageDir(config, Stage::Annotate) / "expectancy_stats.json"));
  std::vector<NoteMatrix> matrices = loadAnnotated(config, pieces);
  FeatureStats stats = computeFeatureStats(matrices);
  writeFileText(dir / "feature_stats.json", stats.toJson());

  // Test hook: abort after N chunks across the whole stage (checkpoints
  // persist, the stage directory is not committed).
  std::size_t cancel_after = 0;
  if (const char* env = std::getenv("MELOGRAPH_TEST_CANCEL_AFTER_CHUNKS")) {
    cancel_after = static_cast<std::size_t>(std::atoll(env));
  }
  std::atomic<std::size_t> global_chunks{0};

  ExtraMetadata extra;
  nlohmann::json counters = nlohmann::json::object();
  for (std::size_t p = 0; p < matrices.size(); ++p) {
    if (cancel_after > 0 && global_chunks.load() >= cancel_after) {
      throw MelographError("dtw stage cancelled before completion (test hook); "
                           "completed chunks are checkpointed");
    }
    const NoteMatrix& m = matrices[p];
    std::vector<Segment> segments = loadSegmentsOf(config, m.piece_id);
    if (segments.size() < 2) {
      throw ArgumentError("piece " + m.piece_id +
                          " yields fewer than 2 segments; cannot build a distance matrix");
    }
    std::vector<FeatureSequence> features =
        pieceFeatures(m, segments, stats, expectancy_stats);
    std::vector<std::string> ids;
    for (const Segment& s : segments) ids.push_back(s.id());

    PairwiseOptions options;
    options.dtw.normalize = config.dtw.normalize;
    options.chunk_size = config.dtw.chunk_size;
    options.workers = config.dtw.workers;
    options.checkpoint_dir = config.output_dir / ".checkpoints" / "dtw" / m.piece_id;
    options.config_hash = fnv1a64(config.dtw.normalize ? "normalized" : "raw");
    if (cancel_after > 0) {
      options.cancel = [&global_chunks, cancel_after](std::size_t) {
        return ++global_chunks >= cancel_after;
      };
    }
    PairwiseResult result = pairwiseMatrix(features, ids, options);
    if (!result.complete) {
      throw MelographError("dtw stage cancelled before completion (test hook); "
                           "completed chunks are checkpointed");
    }
    validateDistanceMatrix(result.matrix);
    writeFileText(dir / (m.piece_id + ".distances.csv"),
                  distanceMatrixToCsv(result.matrix));
    counters[m.piece_id] = {{"chunks_computed", result.chunks_computed},
                            {"chunks_reused", result.chunks_reused}};
  }
  extra["chunk_counters"] = counters;
  return extra;
}

ExtraMetadata runGraph(const PipelineConfig& config, const std::vector<PieceEntry>& pieces,
                       const std::filesystem::path& dir) {
  for (const PieceEntry& piece : pieces) {
    SegmentGraph g = buildLabeledGraph(config, piece.piece_id, config.graph.operating_k);
    writeFileText(dir / (piece.piece_id + ".graphml"), graphToGraphml(g));
    writeFileText(dir / (piece.piece_id + ".dot"), graphToDot(g));
    writeFileText(dir / (piece.piece_id + ".adjacency.json"), graphToAdjacencyJson(g));
  }
  return {};
}

ExtraMetadata runSweep(const PipelineConfig& config, const std::vector<PieceEntry>& pieces,
                       const std::filesystem::path& dir) {
  std::map<int, std::vector<SegmentGraph>> by_k;
  for (int k = config.graph.k_min; k <= config.graph.k_max; ++k) {
    for (const PieceEntry& piece : pieces) {
      by_k[k].push_back(buildLabeledGraph(config, piece.piece_id, k));
    }
  }
  SimilarityReport report = kSweep(by_k, config.wl_h, KlOptions{config.seeds.kl, 50});
  writeFileText(dir / "report.json", report.toJson());
  writeFileText(dir / "sweep.csv", report.toCsv());
  return {};
}

ExtraMetadata runHeatmap(const PipelineConfig& config, const std::vector<PieceEntry>& pieces,
                         const std::filesystem::path& dir) {
  std::vector<SegmentGraph> graphs;
  std::map<std::string, std::string> groups;
  for (const PieceEntry& piece : pieces) {
    graphs.push_back(buildLabeledGraph(config, piece.piece_id, config.graph.operating_k));
    groups[piece.piece_id] = piece.group;
  }
  HeatmapResult result = corpusHeatmaps(graphs, groups, config.wl_h);
  writeFileText(dir / "piecewise.csv", result.piecewiseCsv());
  writeFileText(dir / "groups.csv", result.groupCsv());
  return {};
}

ExtraMetadata runMds(const PipelineConfig& config, const std::vector<PieceEntry>& pieces,
                     const std::filesystem::path& dir) {
  // Pair selection by WL-similarity tiers from the heatmap stage.
  nlohmann::json unused;
  (void)unused;
  std::vector<NoteMatrix> matrices = loadAnnotated(config, pieces);
  ExpectancyStats expectancy_stats = ExpectancyStats::fromJson(
      readFileText(stageDir(config, Stage::Annotate) / "expectancy_stats.json"));
  FeatureStats stats = FeatureStats::fromJson(
      readFileText(stageDir(config, Stage::Dtw) / "feature_stats.json"));

  std::string piecewise_csv =
      readFileText(stageDir(config, Stage::Heatmap) / "piecewise.csv");
  // Parse the piecewise matrix (header row of ids, id-prefixed rows).
  std::istringstream in(piecewise_csv);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> ids;
  {
    std::istringstream header(line);
    std::string field;
    std::getline(header, field, ',');
    while (std::getline(header, field, ',')) ids.push_back(field);
  }
  const std::size_t n = ids.size();
  std::vector<double> sim(n * n, 0.0);
  for (std::size_t r = 0; r < n && std::getline(in, line); ++r) {
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    for (std::size_t c = 0; c < n; ++c) {
      std::getline(fields, field, ',');
      sim[r * n + c] = std::stod(field);
    }
  }

  struct PairScore {
    std::size_t a, b;
    double similarity;
  };
  std::vector<PairScore> pair_scores;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pair_scores.push_back({i, j, sim[i * n + j]});
  }
  std::sort(pair_scores.begin(), pair_scores.end(),
            [](const PairScore& x, const PairScore& y) {
              if (x.similarity != y.similarity) return x.similarity < y.similarity;
              return std::tie(x.a, x.b) < std::tie(y.a, y.b);
            });
  std::size_t per_tier = static_cast<std::size_t>(std::max(1, config.mds.pairs_per_tier));
  per_tier = std::min(per_tier, pair_scores.size());

  struct Selected {
    PairScore pair;
    std::string tier;
  };
  std::vector<Selected> selected;
  std::set<std::pair<std::size_t, std::size_t>> taken;
  auto take = [&](std::size_t idx, const std::string& tier) {
    const PairScore& p = pair_scores[idx];
    if (taken.insert({p.a, p.b}).second) selected.push_back({p, tier});
  };
  for (std::size_t i = 0; i < per_tier; ++i) take(i, "low");
  std::size_t median_start = pair_scores.size() / 2 >= per_tier / 2
                                 ? pair_scores.size() / 2 - per_tier / 2
                                 : 0;
  for (std::size_t i = 0; i < per_tier && median_start + i < pair_scores.size(); ++i) {
    take(median_start + i, "median");
  }
  for (std::size_t i = 0; i < per_tier; ++i) take(pair_scores.size() - 1 - i, "high");

  // Piece lookup tables.
  std::map<std::string, std::size_t> piece_index;
  for (std::size_t p = 0; p < pieces.size(); ++p) piece_index[pieces[p].piece_id] = p;

  std::ostringstream pairs_csv;
  pairs_csv << "pair,piece_a,piece_b,tier,wl_similarity,n_segments,stress,"
               "silhouette,knn_accuracy\n";
  MdsOptions mds_options;
  mds_options.max_iterations = config.mds.max_iterations;
  mds_options.tolerance = config.mds.tolerance;
  mds_options.knn_k = config.mds.knn_k;

  for (const Selected& sel : selected) {
    const std::string& id_a = ids[sel.pair.a];
    const std::string& id_b = ids[sel.pair.b];
    const NoteMatrix& ma = matrices[piece_index.at(id_a)];
    const NoteMatrix& mb = matrices[piece_index.at(id_b)];
    std::vector<Segment> sa = loadSegmentsOf(config, id_a);
    std::vector<Segment> sb = loadSegmentsOf(config, id_b);
    std::vector<FeatureSequence> features = pieceFeatures(ma, sa, stats, expectancy_stats);
    std::vector<FeatureSequence> fb = pieceFeatures(mb, sb, stats, expectancy_stats);
    features.insert(features.end(), fb.begin(), fb.end());
    std::vector<std::string> seg_ids;
    std::vector<int> labels;
    for (const Segment& s : sa) {
      seg_ids.push_back(s.id());
      labels.push_back(0);
    }
    for (const Segment& s : sb) {
      seg_ids.push_back(s.id());
      labels.push_back(1);
    }

    PairwiseOptions joint_options;
    joint_options.dtw.normalize = config.dtw.normalize;
    joint_options.workers = config.dtw.workers;
    PairwiseResult joint = pairwiseMatrix(features, seg_ids, joint_options);
    MdsResult mds_result = jointSegmentMds(joint.matrix, labels, mds_options);

    std::string pair_name = id_a + "__" + id_b;
    pairs_csv << pair_name << "," << id_a << "," << id_b << "," << sel.tier << ","
              << formatDouble(sel.pair.similarity) << "," << seg_ids.size() << ","
              << formatDouble(mds_result.stress) << ","
              << formatDouble(mds_result.silhouette_mean) << ","
              << formatDouble(mds_result.knn_accuracy) << "\n";

    std::ostringstream points_csv;
    points_csv << "segment_id,piece,x,y\n";
    for (std::size_t i = 0; i < seg_ids.size(); ++i) {
      points_csv << seg_ids[i] << "," << (labels[i] == 0 ? id_a : id_b) << ","
                 << formatDouble(mds_result.points[i][0]) << ","
                 << formatDouble(mds_result.points[i][1]) << "\n";
    }
    writeFileText(dir / (pair_name + ".points.csv"), points_csv.str());
  }
  writeFileText(dir / "pairs.csv", pairs_csv.str());
  return {};
}

ExtraMetadata runEmbed(const PipelineConfig& config, const std::vector<PieceEntry>& pieces,
                       const std::filesystem::path& dir) {
  std::vector<std::vector<std::string>> documents;
  for (const PieceEntry& piece : pieces) {
    SegmentGraph g = buildLabeledGraph(config, piece.piece_id, config.graph.operating_k);
    documents.push_back(wlDocument(g, config.wl_h));
  }
  Graph2VecOptions options;
  options.dim = config.graph2vec.dim;
  options.epochs = config.graph2vec.epochs;
  options.learning_rate = config.graph2vec.learning_rate;
  options.negatives = config.graph2vec.negatives;
  options.seed = config.seeds.graph2vec;
  Graph2VecResult result = graph2vecTrain(documents, options);

  std::ostringstream vectors_csv;
  vectors_csv << "piece_id";
  for (int c = 0; c < options.dim; ++c) vectors_csv << ",v" << c;
  vectors_csv << "\n";
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    vectors_csv << pieces[p].piece_id;
    for (double v : result.vectors[p]) vectors_csv << "," << formatDouble(v);
    vectors_csv << "\n";
  }
  writeFileText(dir / "vectors.csv", vectors_csv.str());

  nlohmann::json training;
  training["epoch_loss"] = result.epoch_loss;
  training["dim"] = options.dim;
  training["epochs"] = options.epochs;
  training["learning_rate"] = options.learning_rate;
  training["negatives"] = options.negatives;
  training["seed"] = options.seed;
  writeFileText(dir / "training.json", training.dump(2) + "\n");
  return {};
}

ExtraMetadata runCluster(const PipelineConfig& config, const std::vector<PieceEntry>& pieces,
                         const std::filesystem::path& dir) {
  std::string csv = readFileText(stageDir(config, Stage::Embed) / "vectors.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::string> piece_ids;
  std::vector<std::vector<double>> vectors;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    std::getline(fields, field, ',');
    piece_ids.push_back(field);
    std::vector<double> v;
    while (std::getline(fields, field, ',')) v.push_back(std::stod(field));
    vectors.push_back(std::move(v));
  }

  std::set<std::string> composers;
  std::map<std::string, std::string> composer_of;
  for (const PieceEntry& piece : pieces) {
    composers.insert(piece.composer);
    composer_of[piece.piece_id] = piece.composer;
  }
  int k = config.cluster_k > 0 ? config.cluster_k : static_cast<int>(composers.size());
  k = std::min<int>(k, static_cast<int>(vectors.size()));
  KMeansResult clusters = kmeans(vectors, k, config.seeds.kmeans);
  PcaResult pca = pca2d(vectors);

  std::ostringstream clusters_csv;
  clusters_csv << "composer,piece,label\n";
  for (std::size_t p = 0; p < piece_ids.size(); ++p) {
    clusters_csv << composer_of.at(piece_ids[p]) << "," << piece_ids[p] << ","
                 << clusters.labels[p] << "\n";
  }
  writeFileText(dir / "clusters.csv", clusters_csv.str());

  std::ostringstream pca_csv;
  pca_csv << "piece,x,y,cluster\n";
  for (std::size_t p = 0; p < piece_ids.size(); ++p) {
    pca_csv << piece_ids[p] << "," << formatDouble(pca.points[p][0]) << ","
            << formatDouble(pca.points[p][1]) << "," << clusters.labels[p] << "\n";
  }
  writeFileText(dir / "pca.csv", pca_csv.str());

  ExtraMetadata extra;
  extra["k"] = k;
  return extra;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public orchestration
// ---------------------------------------------------------------------------

const char* stageName(Stage stage) {
  for (const StageInfo& info : kStages) {
    if (info.stage == stage) return info.name;
  }
  return "?";
}

std::optional<Stage> stageFromName(const std::string& name) {
  for (const StageInfo& info : kStages) {
    if (name == info.name) return info.stage;
  }
  return std::nullopt;
}

const std::vector<Stage>& allStages() {
  static const std::vector<Stage> kAll = [] {
    std::vector<Stage> v;
    for (const StageInfo& info : kStages) v.push_back(info.stage);
    return v;
  }();
  return kAll;
}

StageOutcome runStage(const PipelineConfig& config, Stage stage) {
  // Upstream validation: present and built under the current config chain.
  for (Stage upstream : upstreamOf(stage)) {
    auto stored = storedStageHash(config, upstream);
    if (!stored) {
      throw DependencyError(std::string("stage '") + stageName(stage) + "' needs '" +
                            stageName(upstream) + "' to run first");
    }
    if (*stored != hashToHex(stageHash(config, upstream))) {
      throw StaleCacheError(std::string("stage '") + stageName(upstream) +
                            "' was built under a different configuration; rerun it "
                            "before '" + stageName(stage) + "'");
    }
  }

  std::uint64_t own_hash = stageHash(config, stage);
  auto stored = storedStageHash(config, stage);
  if (stored && *stored == hashToHex(own_hash)) return StageOutcome::Cached;

  std::vector<PieceEntry> pieces = loadManifest(config.corpus_manifest);
  std::filesystem::create_directories(config.output_dir);
  std::filesystem::path final_dir = stageDir(config, stage);
  std::filesystem::path tmp_dir = config.output_dir / ("." + std::string(stageName(stage)) +
                                                       ".tmp");
  std::filesystem::remove_all(tmp_dir);
  std::filesystem::create_directories(tmp_dir);

  auto started = std::chrono::steady_clock::now();
  ExtraMetadata extra;
  try {
    switch (stage) {
      case Stage::Ingest: extra = runIngest(config, pieces, tmp_dir); break;
      case Stage::Annotate: extra = runAnnotate(config, pieces, tmp_dir); break;
      case Stage::Segment: extra = runSegment(config, pieces, tmp_dir); break;
      case Stage::Dtw: extra = runDtw(config, pieces, tmp_dir); break;
      case Stage::Graph: extra = runGraph(config, pieces, tmp_dir); break;
      case Stage::Sweep: extra = runSweep(config, pieces, tmp_dir); break;
      case Stage::Heatmap: extra = runHeatmap(config, pieces, tmp_dir); break;
      case Stage::Mds: extra = runMds(config, pieces, tmp_dir); break;
      case Stage::Embed: extra = runEmbed(config, pieces, tmp_dir); break;
      case Stage::Cluster: extra = runCluster(config, pieces, tmp_dir); break;
    }
  } catch (...) {
    std::filesystem::remove_all(tmp_dir);
    throw;
  }
  auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - started)
                     .count();

  nlohmann::json meta;
  meta["stage"] = stageName(stage);
  meta["config_hash"] = hashToHex(own_hash);
  nlohmann::json inputs = nlohmann::json::object();
  for (Stage upstream : upstreamOf(stage)) {
    inputs[stageName(upstream)] = hashToHex(stageHash(config, upstream));
  }
  meta["input_hashes"] = inputs;
  meta["duration_ms"] = elapsed;
  meta["created_at"] = isoTimestamp();
  if (!extra.empty()) meta["extra"] = extra;
  writeFileText(tmp_dir / "metadata.json", meta.dump(2) + "\n");

  std::filesystem::remove_all(final_dir);
  std::filesystem::rename(tmp_dir, final_dir);
  return StageOutcome::Computed;
}

std::vector<StageOutcome> runAll(const PipelineConfig& config) {
  std::vector<StageOutcome> outcomes;
  for (Stage stage : allStages()) outcomes.push_back(runStage(config, stage));
  return outcomes;
}

std::string writeReport(const PipelineConfig& config) {
  for (Stage required : {Stage::Sweep, Stage::Cluster}) {
    if (!std::filesystem::exists(stageDir(config, required) / "metadata.json")) {
      throw DependencyError(std::string("report needs stage '") + stageName(required) +
                            "' to be complete");
    }
  }

  nlohmann::json summary;
  summary["operating_k"] = config.graph.operating_k;
  nlohmann::json sweep =
      nlohmann::json::parse(readFileText(stageDir(config, Stage::Sweep) / "report.json"));
  nlohmann::json k_levels = nlohmann::json::array();
  for (const auto& level : sweep.at("levels")) {
    nlohmann::json row;
    for (const char* key : {"k", "mean_intra", "mean_inter", "cohens_d", "auc", "p_raw",
                            "p_fdr"}) {
      row[key] = level.at(key);
    }
    k_levels.push_back(row);
  }
  summary["k_levels"] = k_levels;

  if (std::filesystem::exists(stageDir(config, Stage::Heatmap) / "groups.csv")) {
    summary["group_heatmap_csv"] = readFileText(stageDir(config, Stage::Heatmap) / "groups.csv");
  }
  if (std::filesystem::exists(stageDir(config, Stage::Mds) / "pairs.csv")) {
    summary["mds_pairs_csv"] = readFileText(stageDir(config, Stage::Mds) / "pairs.csv");
  }

  nlohmann::json clusters = nlohmann::json::array();
  {
    std::istringstream in(readFileText(stageDir(config, Stage::Cluster) / "clusters.csv"));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::istringstream fields(line);
      std::string composer, piece, label;
      std::getline(fields, composer, ',');
      std::getline(fields, piece, ',');
      std::getline(fields, label, ',');
      clusters.push_back({{"composer", composer}, {"piece", piece},
                          {"label", std::stoi(label)}});
    }
  }
  summary["clusters"] = clusters;

  std::string json_text = summary.dump(2) + "\n";
  writeFileText(config.output_dir / "summary.json", json_text);

  std::ostringstream text;
  text << "melograph summary\n=================\n\n";
  text << "Neighborhood sweep (operating k = " << config.graph.operating_k << "):\n";
  text << "  k  mean_intra  mean_inter  cohens_d  auc  p_fdr\n";
  for (const auto& row : k_levels) {
    text << "  " << row.at("k").get<int>() << "  "
         << row.at("mean_intra").get<double>() << "  "
         << row.at("mean_inter").get<double>() << "  "
         << (row.at("cohens_d").is_number() ? std::to_string(row.at("cohens_d").get<double>())
                                            : std::string("degenerate"))
         << "  " << row.at("auc").get<double>() << "  "
         << (row.at("p_fdr").is_number() ? std::to_string(row.at("p_fdr").get<double>())
                                         : std::string("-"))
         << "\n";
  }
  text << "\nCluster assignments (" << clusters.size() << " pieces):\n";
  for (const auto& row : clusters) {
    text << "  " << row.at("composer").get<std::string>() << "  "
         << row.at("piece").get<std::string>() << "  cluster "
         << row.at("label").get<int>() << "\n";
  }
  writeFileText(config.output_dir / "summary.txt", text.str());
  return json_text;
}

PipelineLock::PipelineLock(const std::filesystem::path& output_dir) {
  std::filesystem::create_directories(output_dir);
  path_ = output_dir / ".lock";
  // O_EXCL-style creation via noreplace semantics.
  std::ofstream probe;
  if (std::filesystem::exists(path_)) {
    throw MelographError("output directory is locked by another run (" + path_.string() +
                         "); remove the file if that run is gone");
  }
  probe.open(path_, std::ios::out | std::ios::trunc);
  probe << "melograph\n";
  probe.close();
  if (!std::filesystem::exists(path_)) {
    throw MelographError("failed to create lock file " + path_.string());
  }
}

PipelineLock::~PipelineLock() {
  std::error_code ec;
  std::filesystem::remove(path_, ec);
}

}  // namespace melograph
