#include "embed/kmeans.h"

#include <cmath>
#include <limits>
#include <random>

#include "core/errors.h"

namespace melograph {

namespace {

double squaredDistance(const std::vector<double>& a, const std::vector<double>& b) {
  double sum = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    double d = a[c] - b[c];
    sum += d * d;
  }
  return sum;
}

}  // namespace

KMeansResult kmeans(const std::vector<std::vector<double>>& points, int k,
                    std::uint64_t seed, int max_iter) {
  const std::size_t n = points.size();
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw ArgumentError("kmeans requires 1 <= k <= n");
  }
  const std::size_t dim = points[0].size();
  for (const auto& p : points) {
    if (p.size() != dim) throw ArgumentError("inconsistent point dimensions");
  }

  std::mt19937_64 rng(seed);
  KMeansResult result;

  // k-means++ seeding.
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  result.centroids.push_back(points[first(rng)]);
  std::vector<double> d2(n, 0.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (result.centroids.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : result.centroids) best = std::min(best, squaredDistance(points[i], c));
      d2[i] = best;
      total += best;
    }
    std::size_t chosen = 0;
    if (total > 0.0) {
      double r = unit(rng) * total;
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        acc += d2[i];
        if (acc >= r) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = first(rng);  // all points coincide with existing centroids
    }
    result.centroids.push_back(points[chosen]);
  }

  auto assign = [&](std::vector<int>& labels) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      int best_label = 0;
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        double dist = squaredDistance(points[i], result.centroids[static_cast<std::size_t>(c)]);
        if (dist < best) {
          best = dist;
          best_label = c;
        }
      }
      if (labels[i] != best_label) {
        labels[i] = best_label;
        changed = true;
      }
    }
    return changed;
  };

  auto inertiaOf = [&](const std::vector<int>& labels) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total += squaredDistance(points[i], result.centroids[static_cast<std::size_t>(labels[i])]);
    }
    return total;
  };

  result.labels.assign(n, -1);
  assign(result.labels);
  for (int iter = 0; iter < max_iter; ++iter) {
    // Update step.
    std::vector<std::vector<double>> sums(static_cast<std::size_t>(k),
                                          std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
      auto label = static_cast<std::size_t>(result.labels[i]);
      ++counts[label];
      for (std::size_t c = 0; c < dim; ++c) sums[label][c] += points[i][c];
    }
    for (int c = 0; c < k; ++c) {
      auto ci = static_cast<std::size_t>(c);
      if (counts[ci] == 0) {
        // Empty cluster: steal the point farthest from its own centroid.
        std::size_t worst = 0;
        double worst_dist = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          double dist = squaredDistance(
              points[i], result.centroids[static_cast<std::size_t>(result.labels[i])]);
          if (dist > worst_dist) {
            worst_dist = dist;
            worst = i;
          }
        }
        result.centroids[ci] = points[worst];
        result.labels[worst] = c;
      } else {
        for (std::size_t d = 0; d < dim; ++d) {
          result.centroids[ci][d] = sums[ci][d] / static_cast<double>(counts[ci]);
        }
      }
    }
    bool changed = assign(result.labels);
    result.inertia_history.push_back(inertiaOf(result.labels));
    if (!changed) break;
  }
  result.inertia = inertiaOf(result.labels);
  return result;
}

}  // namespace melograph
