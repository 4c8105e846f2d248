#include "embed/smacof.h"

#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Dense>

#include "core/errors.h"

namespace melograph {

namespace {

double pointDistance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  double dx = a[0] - b[0];
  double dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

std::vector<std::array<double, 2>> classicalScaling(const DistanceMatrix& d) {
  const auto n = static_cast<Eigen::Index>(d.size());
  Eigen::MatrixXd squared(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double v = d.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      squared(i, j) = v * v;
    }
  }
  Eigen::MatrixXd centering =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  Eigen::MatrixXd b = -0.5 * centering * squared * centering;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);

  // Eigenvalues ascend; take the top two non-negative ones.
  std::vector<std::array<double, 2>> points(static_cast<std::size_t>(n), {0.0, 0.0});
  for (int component = 0; component < 2; ++component) {
    Eigen::Index idx = n - 1 - component;
    if (idx < 0) break;
    double lambda = solver.eigenvalues()(idx);
    if (lambda <= 0.0) continue;
    double scale = std::sqrt(lambda);
    for (Eigen::Index i = 0; i < n; ++i) {
      points[static_cast<std::size_t>(i)][static_cast<std::size_t>(component)] =
          scale * solver.eigenvectors()(i, idx);
    }
  }
  return points;
}

}  // namespace

double normalizedStress(const DistanceMatrix& dissimilarities,
                        const std::vector<std::array<double, 2>>& points) {
  double raw = 0.0;
  double denom = 0.0;
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double delta = dissimilarities.at(i, j);
      double dist = pointDistance(points[i], points[j]);
      raw += (delta - dist) * (delta - dist);
      denom += delta * delta;
    }
  }
  if (denom <= 0.0) return 0.0;
  return std::sqrt(raw / denom);
}

std::vector<std::array<double, 2>> mdsEmbed(const DistanceMatrix& dissimilarities,
                                            const MdsOptions& options,
                                            std::vector<double>* stress_history) {
  const std::size_t n = dissimilarities.size();
  if (n < 2) throw ArgumentError("MDS needs at least 2 points");
  validateDistanceMatrix(dissimilarities);
  bool any_positive = false;
  for (double v : dissimilarities.values) {
    if (v > 0.0) {
      any_positive = true;
      break;
    }
  }
  if (!any_positive) {
    throw DegenerateInputError("all-zero distance matrix cannot be embedded");
  }

  std::vector<std::array<double, 2>> x = classicalScaling(dissimilarities);
  double stress = normalizedStress(dissimilarities, x);
  if (stress_history) stress_history->push_back(stress);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    // Guttman transform: X <- (1/n) B(X) X with b_ij = -delta_ij / d_ij.
    std::vector<std::array<double, 2>> next(n, {0.0, 0.0});
    std::vector<double> b_diag(n, 0.0);
    std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        double dist = pointDistance(x[i], x[j]);
        if (dist > 0.0) b[i][j] = -dissimilarities.at(i, j) / dist;
        b_diag[i] -= b[i][j];
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t c = 0; c < 2; ++c) {
        double sum = b_diag[i] * x[i][c];
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) sum += b[i][j] * x[j][c];
        }
        next[i][c] = sum / static_cast<double>(n);
      }
    }
    x = std::move(next);
    double next_stress = normalizedStress(dissimilarities, x);
    if (stress_history) stress_history->push_back(next_stress);
    if (stress - next_stress < options.tolerance) {
      stress = next_stress;
      break;
    }
    stress = next_stress;
  }
  return x;
}

double silhouetteMean(const std::vector<std::array<double, 2>>& points,
                      const std::vector<int>& labels) {
  const std::size_t n = points.size();
  if (labels.size() != n || n == 0) throw ArgumentError("silhouette input mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double own_sum = 0.0;
    std::size_t own_count = 0;
    std::map<int, std::pair<double, std::size_t>> other;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double dist = pointDistance(points[i], points[j]);
      if (labels[j] == labels[i]) {
        own_sum += dist;
        ++own_count;
      } else {
        auto& [sum, count] = other[labels[j]];
        sum += dist;
        ++count;
      }
    }
    if (own_count == 0 || other.empty()) continue;  // singleton scores 0
    double a = own_sum / static_cast<double>(own_count);
    double b = std::numeric_limits<double>::infinity();
    for (const auto& [label, sum_count] : other) {
      b = std::min(b, sum_count.first / static_cast<double>(sum_count.second));
    }
    double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

double knnAccuracy(const std::vector<std::array<double, 2>>& points,
                   const std::vector<int>& labels, int k) {
  const std::size_t n = points.size();
  if (labels.size() != n || n < 2) throw ArgumentError("knn accuracy input mismatch");
  if (k < 1) throw ArgumentError("knn accuracy needs k >= 1");
  const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), n - 1);
  std::size_t correct = 0;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(kk),
                      order.end(), [&](std::size_t a, std::size_t b) {
                        double da = pointDistance(points[i], points[a]);
                        double db = pointDistance(points[i], points[b]);
                        if (da != db) return da < db;
                        return a < b;
                      });
    std::map<int, std::size_t> votes;
    for (std::size_t r = 0; r < kk; ++r) ++votes[labels[order[r]]];
    int winner = votes.begin()->first;
    std::size_t winner_count = votes.begin()->second;
    for (const auto& [label, count] : votes) {
      if (count > winner_count) {
        winner = label;
        winner_count = count;
      }
    }
    if (winner == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(n);
}

MdsResult jointSegmentMds(const DistanceMatrix& joint, const std::vector<int>& piece_labels,
                          const MdsOptions& options) {
  if (piece_labels.size() != joint.size()) {
    throw ArgumentError("piece label count does not match joint matrix size");
  }
  MdsResult result;
  result.points = mdsEmbed(joint, options, &result.stress_history);
  result.stress = result.stress_history.empty() ? 0.0 : result.stress_history.back();
  result.silhouette_mean = silhouetteMean(result.points, piece_labels);
  result.knn_accuracy = knnAccuracy(result.points, piece_labels, options.knn_k);
  return result;
}

}  // namespace melograph
