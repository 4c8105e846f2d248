// Two-component PCA projection.

#pragma once

#include <array>
#include <vector>

namespace melograph {

struct PcaResult {
  std::vector<std::array<double, 2>> points;
  std::array<double, 2> explained_variance = {0.0, 0.0};  // descending
  std::array<std::vector<double>, 2> components;
};

/// Mean-centers the data and projects onto the top-2 eigenvectors of the
/// sample covariance matrix. Components come in descending explained
/// variance; each component's sign is fixed so its largest-magnitude
/// loading is positive. Zero-variance data yields zero components and a
/// zero projection. Requires at least 2 vectors.
PcaResult pca2d(const std::vector<std::vector<double>>& vectors);

}  // namespace melograph
