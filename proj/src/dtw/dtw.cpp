#include "dtw/dtw.h"

#include <cmath>
#include <limits>

#include "core/errors.h"

namespace melograph {

double localCost(const FeatureVec& a, const FeatureVec& b) {
  double dp = a.pitch_z - b.pitch_z;
  double dd = a.log_dur - b.log_dur;
  double de = a.expectancy - b.expectancy;
  return std::sqrt(dp * dp + dd * dd + de * de);
}

double dtw(const FeatureSequence& a, const FeatureSequence& b, const DtwOptions& options) {
  if (a.empty() || b.empty()) throw ArgumentError("dtw over an empty sequence");
  const std::size_t m = a.size();
  const std::size_t n = b.size();

  struct Cell {
    double cost = std::numeric_limits<double>::infinity();
    std::size_t length = 0;

    bool betterThan(const Cell& other) const {
      if (cost != other.cost) return cost < other.cost;
      return length < other.length;
    }
  };

  // Two-row DP over (cost, path length), lexicographic minimization.
  std::vector<Cell> prev(n), curr(n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double cost = localCost(a[i], b[j]);
      Cell best;
      if (i == 0 && j == 0) {
        best = {0.0, 0};
      } else {
        if (i > 0 && j > 0 && prev[j - 1].betterThan(best)) best = prev[j - 1];
        if (i > 0 && prev[j].betterThan(best)) best = prev[j];
        if (j > 0 && curr[j - 1].betterThan(best)) best = curr[j - 1];
      }
      curr[j] = {best.cost + cost, best.length + 1};
    }
    std::swap(prev, curr);
  }
  const Cell& final_cell = prev[n - 1];
  if (!options.normalize) return final_cell.cost;
  return final_cell.cost / static_cast<double>(final_cell.length);
}

}  // namespace melograph
