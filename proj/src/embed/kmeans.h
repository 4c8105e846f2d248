// k-means clustering with k-means++ seeding.

#pragma once

#include <cstdint>
#include <vector>

namespace melograph {

struct KMeansResult {
  std::vector<int> labels;
  std::vector<std::vector<double>> centroids;
  double inertia = 0.0;                  // total within-cluster sum of squares
  std::vector<double> inertia_history;   // after each Lloyd iteration
};

/// Seeded k-means++: Lloyd iterations run until the assignment reaches a
/// fixpoint or max_iter; an emptied cluster is repaired by stealing the
/// point farthest from its centroid. Throws ArgumentError when k exceeds
/// the number of points or k < 1.
KMeansResult kmeans(const std::vector<std::vector<double>>& points, int k,
                    std::uint64_t seed, int max_iter = 300);

}  // namespace melograph
