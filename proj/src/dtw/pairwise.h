// Parallel, resumable computation of full pairwise DTW distance matrices.

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dtw/distance_matrix.h"
#include "dtw/dtw.h"

namespace melograph {

struct PairwiseOptions {
  DtwOptions dtw;
  int workers = 0;              // 0: MELOGRAPH_WORKERS env or hardware count
  std::uint64_t chunk_size = 64;
  std::filesystem::path checkpoint_dir;  // empty: compute without checkpoints
  std::uint64_t config_hash = 0;         // folded into checkpoint headers
  // Polled after every computed chunk with the number of chunks this run
  // has completed; returning true stops the run (completed chunks stay
  // persisted, the result is marked incomplete).
  std::function<bool(std::size_t)> cancel;
};

struct PairwiseResult {
  DistanceMatrix matrix;            // valid only when complete
  std::size_t chunks_computed = 0;  // this run
  std::size_t chunks_reused = 0;    // from checkpoints
  bool complete = true;
};

/// Canonical pair enumeration: index p runs over the row-major upper
/// triangle (i < j) of an n x n matrix.
std::pair<std::size_t, std::size_t> pairFromIndex(std::uint64_t p, std::size_t n);
std::uint64_t totalPairs(std::size_t n);

/// Computes every unordered pair; assembly is deterministic regardless of
/// worker completion order. At least 2 segments required.
PairwiseResult pairwiseMatrix(std::span<const FeatureSequence> segments,
                              std::vector<std::string> ids,
                              const PairwiseOptions& options = {});

/// Worker count resolution shared with other parallel stages.
int resolveWorkerCount(int requested);

}  // namespace melograph
