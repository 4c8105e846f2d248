// Pipeline configuration and corpus manifest.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace melograph {

struct PieceEntry {
  std::filesystem::path path;  // resolved against the manifest location
  std::string piece_id;
  std::string composer;
  std::string melody_rule;  // "highest" (default), "lowest", "part:<id>"
  std::string group;        // defaults to the composer
};

struct PipelineConfig {
  std::filesystem::path config_dir;  // directory of the loaded config file
  std::filesystem::path corpus_manifest;
  std::filesystem::path output_dir;
  std::string melody_rule = "highest";

  struct Segmenter {
    double w_pitch = 1.0;
    double w_onset = 2.0;
    int min_notes = 2;
  } segmenter;

  struct Dtw {
    bool normalize = true;
    std::uint64_t chunk_size = 64;
    int workers = 0;  // 0: env/hardware
  } dtw;

  struct Graph {
    int k_min = 2;
    int k_max = 12;
    int operating_k = 8;
  } graph;

  int wl_h = 3;

  struct Graph2Vec {
    int dim = 128;
    int epochs = 50;
    double learning_rate = 0.025;
    int negatives = 5;
  } graph2vec;

  struct Mds {
    int pairs_per_tier = 3;
    int max_iterations = 300;
    double tolerance = 1e-6;
    int knn_k = 1;  // neighbor count for the accuracy diagnostic
  } mds;

  int cluster_k = 0;  // 0: number of distinct composers

  struct Seeds {
    std::uint64_t kl = 1;
    std::uint64_t graph2vec = 42;
    std::uint64_t kmeans = 7;
  } seeds;

  /// Loads a JSON config; relative paths resolve against the config file's
  /// directory. Validates invariants (operating k within the sweep range,
  /// positive sizes). Throws ParseError / ArgumentError.
  static PipelineConfig load(const std::filesystem::path& path);
  static PipelineConfig fromJsonText(const std::string& text,
                                     const std::filesystem::path& base_dir);
  std::string toJson() const;
};

/// Loads the corpus manifest; piece ids must be unique and filename-safe.
std::vector<PieceEntry> loadManifest(const std::filesystem::path& path);

}  // namespace melograph
