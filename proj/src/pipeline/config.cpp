#include "pipeline/config.h"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "core/errors.h"
#include "score/melody_select.h"

namespace melograph {

namespace {

std::string readTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

bool safePieceId(const std::string& id) {
  if (id.empty()) return false;
  for (char c : id) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '-' || c == '_' || c == '.';
    if (!ok) return false;
  }
  return true;
}

}  // namespace

PipelineConfig PipelineConfig::fromJsonText(const std::string& text,
                                            const std::filesystem::path& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }

  PipelineConfig config;
  config.config_dir = base_dir;
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  try {
    config.corpus_manifest = resolve(j.at("corpus_manifest").get<std::string>());
    config.output_dir = resolve(j.value("output_dir", std::string("out")));
    config.melody_rule = j.value("melody_rule", std::string("highest"));
    if (j.contains("segmenter")) {
      const auto& s = j["segmenter"];
      config.segmenter.w_pitch = s.value("w_pitch", 1.0);
      config.segmenter.w_onset = s.value("w_onset", 2.0);
      config.segmenter.min_notes = s.value("min_notes", 2);
    }
    if (j.contains("dtw")) {
      const auto& d = j["dtw"];
      config.dtw.normalize = d.value("normalize", true);
      config.dtw.chunk_size = d.value("chunk_size", static_cast<std::uint64_t>(64));
      config.dtw.workers = d.value("workers", 0);
    }
    if (j.contains("graph")) {
      const auto& g = j["graph"];
      config.graph.k_min = g.value("k_min", 2);
      config.graph.k_max = g.value("k_max", 12);
      config.graph.operating_k = g.value("operating_k", 8);
    }
    if (j.contains("wl")) config.wl_h = j["wl"].value("h", 3);
    if (j.contains("graph2vec")) {
      const auto& g = j["graph2vec"];
      config.graph2vec.dim = g.value("dim", 128);
      config.graph2vec.epochs = g.value("epochs", 50);
      config.graph2vec.learning_rate = g.value("learning_rate", 0.025);
      config.graph2vec.negatives = g.value("negatives", 5);
    }
    if (j.contains("mds")) {
      const auto& m = j["mds"];
      config.mds.pairs_per_tier = m.value("pairs_per_tier", 3);
      config.mds.max_iterations = m.value("max_iterations", 300);
      config.mds.tolerance = m.value("tolerance", 1e-6);
      config.mds.knn_k = m.value("knn_k", 1);
    }
    config.cluster_k = j.value("cluster", nlohmann::json::object()).value("k", 0);
    if (j.contains("seeds")) {
      const auto& s = j["seeds"];
      config.seeds.kl = s.value("kl", static_cast<std::uint64_t>(1));
      config.seeds.graph2vec = s.value("graph2vec", static_cast<std::uint64_t>(42));
      config.seeds.kmeans = s.value("kmeans", static_cast<std::uint64_t>(7));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }

  if (config.graph.k_min < 1 || config.graph.k_max < config.graph.k_min) {
    throw ArgumentError("invalid k sweep range");
  }
  if (config.graph.operating_k < config.graph.k_min ||
      config.graph.operating_k > config.graph.k_max) {
    throw ArgumentError("operating k must lie within the sweep range");
  }
  if (config.wl_h < 0 || config.wl_h > 10) {
    throw ArgumentError("WL iteration count must be in [0, 10]");
  }
  if (config.segmenter.min_notes < 1) throw ArgumentError("min_notes must be positive");
  if (!parseMelodyRule(config.melody_rule)) {
    throw ArgumentError("unknown melody rule '" + config.melody_rule + "'");
  }
  return config;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  return fromJsonText(readTextFile(path), path.parent_path());
}

std::string PipelineConfig::toJson() const {
  nlohmann::json j;
  j["corpus_manifest"] = corpus_manifest.string();
  j["output_dir"] = output_dir.string();
  j["melody_rule"] = melody_rule;
  j["segmenter"] = {{"w_pitch", segmenter.w_pitch},
                    {"w_onset", segmenter.w_onset},
                    {"min_notes", segmenter.min_notes}};
  j["dtw"] = {{"normalize", dtw.normalize},
              {"chunk_size", dtw.chunk_size},
              {"workers", dtw.workers}};
  j["graph"] = {{"k_min", graph.k_min},
                {"k_max", graph.k_max},
                {"operating_k", graph.operating_k}};
  j["wl"] = {{"h", wl_h}};
  j["graph2vec"] = {{"dim", graph2vec.dim},
                    {"epochs", graph2vec.epochs},
                    {"learning_rate", graph2vec.learning_rate},
                    {"negatives", graph2vec.negatives}};
  j["mds"] = {{"pairs_per_tier", mds.pairs_per_tier},
              {"max_iterations", mds.max_iterations},
              {"tolerance", mds.tolerance},
              {"knn_k", mds.knn_k}};
  j["cluster"] = {{"k", cluster_k}};
  j["seeds"] = {{"kl", seeds.kl}, {"graph2vec", seeds.graph2vec}, {"kmeans", seeds.kmeans}};
  return j.dump(2) + "\n";
}

std::vector<PieceEntry> loadManifest(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(readTextFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  std::vector<PieceEntry> pieces;
  std::set<std::string> seen;
  const std::filesystem::path base = path.parent_path();
  try {
    for (const auto& item : j.at("pieces")) {
      PieceEntry entry;
      std::filesystem::path piece_path(item.at("path").get<std::string>());
      entry.path = piece_path.is_absolute() ? piece_path : base / piece_path;
      entry.piece_id = item.at("piece_id").get<std::string>();
      entry.composer = item.value("composer", std::string("Unknown"));
      entry.melody_rule = item.value("melody_rule", std::string(""));
      entry.group = item.value("group", entry.composer);
      if (!safePieceId(entry.piece_id)) {
        throw ArgumentError("piece_id '" + entry.piece_id +
                            "' must use only letters, digits, '-', '_', '.'");
      }
      if (!seen.insert(entry.piece_id).second) {
        throw ArgumentError("duplicate piece_id '" + entry.piece_id + "' in manifest");
      }
      pieces.push_back(entry);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest: ") + e.what());
  }
  if (pieces.empty()) throw ArgumentError("manifest lists no pieces");
  return pieces;
}

}  // namespace melograph
