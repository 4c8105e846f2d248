// Metric MDS by SMACOF stress majorization, with 2-D embedding diagnostics.

#pragma once

#include <array>
#include <vector>

#include "dtw/distance_matrix.h"

namespace melograph {

struct MdsOptions {
  int max_iterations = 300;
  double tolerance = 1e-6;  // stop when stress improves by less than this
  int knn_k = 1;            // neighbor count for the accuracy diagnostic
};

struct MdsResult {
  std::vector<std::array<double, 2>> points;
  double stress = 0.0;                  // final normalized stress (Stress-1)
  std::vector<double> stress_history;   // one entry per iteration
  double silhouette_mean = 0.0;         // over 2-D points, piece labels
  double knn_accuracy = 0.0;            // leave-one-out 1-NN accuracy
};

/// Embeds a dissimilarity matrix into the plane: classical-scaling start
/// (double centering, top-2 eigenvectors), then Guttman-transform
/// iterations until the stress improvement falls under tolerance.
/// Requires n >= 2; an all-zero matrix raises DegenerateInputError.
std::vector<std::array<double, 2>> mdsEmbed(const DistanceMatrix& dissimilarities,
                                            const MdsOptions& options,
                                            std::vector<double>* stress_history = nullptr);

/// Normalized Stress-1 of a configuration against target dissimilarities.
double normalizedStress(const DistanceMatrix& dissimilarities,
                        const std::vector<std::array<double, 2>>& points);

/// MDS over the joint segment matrix of a graph pair, plus diagnostics
/// computed in the embedded plane with piece-of-origin labels.
MdsResult jointSegmentMds(const DistanceMatrix& joint, const std::vector<int>& piece_labels,
                          const MdsOptions& options = {});

/// Mean silhouette of labeled 2-D points (single-member clusters score 0).
double silhouetteMean(const std::vector<std::array<double, 2>>& points,
                      const std::vector<int>& labels);

/// Leave-one-out k-NN accuracy of labeled 2-D points: majority vote over
/// the k nearest (distance ties go to the lower index, vote ties to the
/// smaller label). Default 1-NN.
double knnAccuracy(const std::vector<std::array<double, 2>>& points,
                   const std::vector<int>& labels, int k = 1);

}  // namespace melograph
