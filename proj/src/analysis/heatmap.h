// Piecewise and group-averaged WL similarity matrices.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "graph/segment_graph.h"

namespace melograph {

struct HeatmapResult {
  std::vector<std::string> piece_ids;
  std::vector<double> piecewise;  // n*n, diagonal = self similarity (1)
  std::vector<std::string> groups;
  std::vector<double> group_means;  // g*g; NaN = undefined (singleton diagonal)

  double piecewiseAt(std::size_t i, std::size_t j) const {
    return piecewise[i * piece_ids.size() + j];
  }
  double groupAt(std::size_t a, std::size_t b) const {
    return group_means[a * groups.size() + b];
  }

  std::string piecewiseCsv() const;
  std::string groupCsv() const;  // undefined cells render empty
};

/// Piecewise matrix of normalized WL similarities plus group-mean
/// aggregation: off-diagonal cells average all cross-group pairs, diagonal
/// cells average distinct within-group pairs (NaN for singleton groups).
/// Every piece must be assigned a group.
HeatmapResult corpusHeatmaps(const std::vector<SegmentGraph>& graphs,
                             const std::map<std::string, std::string>& piece_to_group,
                             int h);

}  // namespace melograph
