#include "analysis/heatmap.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "analysis/wl_kernel.h"
#include "core/errors.h"
#include "dtw/distance_matrix.h"

namespace melograph {

HeatmapResult corpusHeatmaps(const std::vector<SegmentGraph>& graphs,
                             const std::map<std::string, std::string>& piece_to_group,
                             int h) {
  HeatmapResult result;
  const std::size_t n = graphs.size();
  std::vector<std::string> piece_groups;
  for (const SegmentGraph& g : graphs) {
    auto it = piece_to_group.find(g.piece_id);
    if (it == piece_to_group.end()) {
      throw ArgumentError("piece " + g.piece_id + " has no group assignment");
    }
    result.piece_ids.push_back(g.piece_id);
    piece_groups.push_back(it->second);
  }

  std::vector<WlFeatureMap> features;
  features.reserve(n);
  std::vector<double> self_raw;
  for (const SegmentGraph& g : graphs) {
    features.push_back(wlFeatures(g, h));
    self_raw.push_back(wlKernelRaw(features.back(), features.back()));
  }

  result.piecewise.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double denom = std::sqrt(self_raw[i] * self_raw[j]);
      double value = denom > 0.0 ? wlKernelRaw(features[i], features[j]) / denom : 0.0;
      result.piecewise[i * n + j] = value;
      result.piecewise[j * n + i] = value;
    }
  }

  // Stable, first-appearance group ordering.
  for (const std::string& g : piece_groups) {
    if (std::find(result.groups.begin(), result.groups.end(), g) == result.groups.end()) {
      result.groups.push_back(g);
    }
  }
  const std::size_t m = result.groups.size();
  std::vector<double> sums(m * m, 0.0);
  std::vector<std::size_t> counts(m * m, 0);
  auto groupIndex = [&](const std::string& g) {
    return static_cast<std::size_t>(
        std::find(result.groups.begin(), result.groups.end(), g) - result.groups.begin());
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      std::size_t a = groupIndex(piece_groups[i]);
      std::size_t b = groupIndex(piece_groups[j]);
      double value = result.piecewise[i * n + j];
      sums[a * m + b] += value;
      counts[a * m + b] += 1;
      if (a != b) {
        sums[b * m + a] += value;
        counts[b * m + a] += 1;
      }
    }
  }
  result.group_means.assign(m * m, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t c = 0; c < m * m; ++c) {
    if (counts[c] > 0) result.group_means[c] = sums[c] / static_cast<double>(counts[c]);
  }
  return result;
}

std::string HeatmapResult::piecewiseCsv() const {
  std::ostringstream out;
  out << "piece";
  for (const std::string& id : piece_ids) out << "," << id;
  out << "\n";
  const std::size_t n = piece_ids.size();
  for (std::size_t i = 0; i < n; ++i) {
    out << piece_ids[i];
    for (std::size_t j = 0; j < n; ++j) out << "," << formatDouble(piecewiseAt(i, j));
    out << "\n";
  }
  return out.str();
}

std::string HeatmapResult::groupCsv() const {
  std::ostringstream out;
  out << "group";
  for (const std::string& g : groups) out << "," << g;
  out << "\n";
  const std::size_t m = groups.size();
  for (std::size_t a = 0; a < m; ++a) {
    out << groups[a];
    for (std::size_t b = 0; b < m; ++b) {
      double v = groupAt(a, b);
      out << ",";
      if (!std::isnan(v)) out << formatDouble(v);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace melograph
