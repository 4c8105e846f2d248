// Staged pipeline orchestration with hash-chained caching and atomic
// artifact directories.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pipeline/config.h"

namespace melograph {

enum class Stage { Ingest, Annotate, Segment, Dtw, Graph, Sweep, Heatmap, Mds, Embed, Cluster };

const char* stageName(Stage stage);
std::optional<Stage> stageFromName(const std::string& name);
const std::vector<Stage>& allStages();

enum class StageOutcome { Computed, Cached };

/// Runs one stage: validates upstream artifacts (DependencyError when one
/// is missing, StaleCacheError when it was built under a different
/// configuration), no-ops on a cache hit, and otherwise writes the stage
/// directory atomically (temp dir + rename).
StageOutcome runStage(const PipelineConfig& config, Stage stage);

/// Runs every stage in order, recomputing whatever is stale.
std::vector<StageOutcome> runAll(const PipelineConfig& config);

/// Aggregates sweep/heatmap/mds/cluster artifacts into summary.json and a
/// human-readable summary.txt under the output directory; returns the
/// JSON text. Requires the sweep and cluster stages to be complete.
std::string writeReport(const PipelineConfig& config);

/// Exclusive per-output-directory lock (lock file with O_EXCL semantics).
class PipelineLock {
 public:
  explicit PipelineLock(const std::filesystem::path& output_dir);
  ~PipelineLock();
  PipelineLock(const PipelineLock&) = delete;
  PipelineLock& operator=(const PipelineLock&) = delete;

 private:
  std::filesystem::path path_;
};

}  // namespace melograph
