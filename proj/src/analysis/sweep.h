// Intra- vs inter-graph similarity comparison across k-NN neighborhood sizes.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "analysis/kernighan_lin.h"
#include "graph/segment_graph.h"

namespace melograph {

/// WL similarity between the two Kernighan-Lin halves of a graph.
double intraSimilarity(const SegmentGraph& graph, int h, const KlOptions& kl = {});

struct KLevelStats {
  int k = 0;
  std::vector<double> intra;  // one per piece
  std::vector<double> inter;  // one per unordered piece pair
  double mean_intra = 0.0;
  double mean_inter = 0.0;
  double cohens_d = 0.0;
  double auc = 0.0;
  double p_raw = 1.0;
  double p_fdr = 1.0;
};

struct SimilarityReport {
  int h = 0;
  std::vector<KLevelStats> levels;

  std::string toJson() const;
  /// Plot-data CSV: k, mean_intra, mean_inter, cohens_d, auc, p_raw, p_fdr.
  std::string toCsv() const;
};

/// Per k-level intra/inter score lists with effect sizes, the rank-based
/// AUC, Mann-Whitney p, and Benjamini-Hochberg adjustment across levels
/// (degenerate-variance levels excluded from the correction). Requires at
/// least 3 pieces per level.
SimilarityReport kSweep(const std::map<int, std::vector<SegmentGraph>>& graphs_by_k, int h,
                        const KlOptions& kl = {});

}  // namespace melograph
