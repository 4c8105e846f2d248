#include "embed/pca.h"

#include <cmath>

#include <Eigen/Dense>

#include "core/errors.h"

namespace melograph {

PcaResult pca2d(const std::vector<std::vector<double>>& vectors) {
  const std::size_t n = vectors.size();
  if (n < 2) throw ArgumentError("PCA needs at least 2 vectors");
  const std::size_t dim = vectors[0].size();
  for (const auto& v : vectors) {
    if (v.size() != dim) throw ArgumentError("inconsistent vector dimensions");
  }

  Eigen::MatrixXd x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vectors[i][j];
    }
  }
  Eigen::RowVectorXd mean = x.colwise().mean();
  Eigen::MatrixXd centered = x.rowwise() - mean;
  Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  PcaResult result;
  result.points.assign(n, {0.0, 0.0});
  result.components[0].assign(dim, 0.0);
  result.components[1].assign(dim, 0.0);

  const Eigen::Index d = static_cast<Eigen::Index>(dim);
  for (int component = 0; component < 2; ++component) {
    Eigen::Index idx = d - 1 - component;
    if (idx < 0) break;
    double lambda = solver.eigenvalues()(idx);
    if (lambda <= 1e-15) continue;  // zero-variance direction stays zero
    Eigen::VectorXd axis = solver.eigenvectors().col(idx);
    // Sign convention: largest-magnitude loading positive.
    Eigen::Index max_idx = 0;
    axis.cwiseAbs().maxCoeff(&max_idx);
    if (axis(max_idx) < 0.0) axis = -axis;
    result.explained_variance[static_cast<std::size_t>(component)] = lambda;
    for (std::size_t j = 0; j < dim; ++j) {
      result.components[static_cast<std::size_t>(component)][j] =
          axis(static_cast<Eigen::Index>(j));
    }
    Eigen::VectorXd projected = centered * axis;
    for (std::size_t i = 0; i < n; ++i) {
      result.points[i][static_cast<std::size_t>(component)] =
          projected(static_cast<Eigen::Index>(i));
    }
  }
  return result;
}

}  // namespace melograph
