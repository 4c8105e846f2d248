#include "analysis/sweep.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "analysis/stats.h"
#include "analysis/wl_kernel.h"
#include "core/errors.h"
#include "dtw/distance_matrix.h"

namespace melograph {

double intraSimilarity(const SegmentGraph& graph, int h, const KlOptions& kl) {
  KlResult split = klBisect(graph, kl);
  return wlKernel(split.a, split.b, h);
}

SimilarityReport kSweep(const std::map<int, std::vector<SegmentGraph>>& graphs_by_k, int h,
                        const KlOptions& kl) {
  SimilarityReport report;
  report.h = h;
  for (const auto& [k, graphs] : graphs_by_k) {
    if (graphs.size() < 3) {
      throw ArgumentError("k-sweep needs at least 3 pieces, got " +
                          std::to_string(graphs.size()));
    }
    KLevelStats level;
    level.k = k;
    std::vector<WlFeatureMap> features;
    features.reserve(graphs.size());
    for (const SegmentGraph& g : graphs) {
      level.intra.push_back(intraSimilarity(g, h, kl));
      features.push_back(wlFeatures(g, h));
    }
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      for (std::size_t j = i + 1; j < graphs.size(); ++j) {
        double k11 = wlKernelRaw(features[i], features[i]);
        double k22 = wlKernelRaw(features[j], features[j]);
        double value = (k11 == 0.0 || k22 == 0.0)
                           ? 0.0
                           : wlKernelRaw(features[i], features[j]) / std::sqrt(k11 * k22);
        level.inter.push_back(value);
      }
    }
    level.mean_intra = std::accumulate(level.intra.begin(), level.intra.end(), 0.0) /
                       static_cast<double>(level.intra.size());
    level.mean_inter = std::accumulate(level.inter.begin(), level.inter.end(), 0.0) /
                       static_cast<double>(level.inter.size());
    level.cohens_d = cohensD(level.intra, level.inter);
    level.auc = aucStatistic(level.intra, level.inter);
    level.p_raw = mannWhitneyP(level.intra, level.inter);
    report.levels.push_back(std::move(level));
  }

  // FDR across k-levels; degenerate-variance levels carry NaN and are
  // skipped by the correction.
  std::vector<double> p_for_fdr;
  p_for_fdr.reserve(report.levels.size());
  for (const KLevelStats& level : report.levels) {
    bool degenerate = !std::isfinite(level.cohens_d);
    p_for_fdr.push_back(degenerate ? std::numeric_limits<double>::quiet_NaN()
                                   : level.p_raw);
  }
  std::vector<double> adjusted = benjaminiHochberg(p_for_fdr);
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    report.levels[i].p_fdr = adjusted[i];
  }
  return report;
}

std::string SimilarityReport::toJson() const {
  nlohmann::json j;
  j["h"] = h;
  nlohmann::json levels_json = nlohmann::json::array();
  auto encode = [](double v) -> nlohmann::json {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
  };
  for (const KLevelStats& level : levels) {
    nlohmann::json lj;
    lj["k"] = level.k;
    lj["intra"] = level.intra;
    lj["inter"] = level.inter;
    lj["mean_intra"] = level.mean_intra;
    lj["mean_inter"] = level.mean_inter;
    lj["cohens_d"] = encode(level.cohens_d);
    lj["auc"] = level.auc;
    lj["p_raw"] = level.p_raw;
    lj["p_fdr"] = encode(level.p_fdr);
    levels_json.push_back(lj);
  }
  j["levels"] = levels_json;
  return j.dump(2) + "\n";
}

std::string SimilarityReport::toCsv() const {
  std::ostringstream out;
  out << "k,mean_intra,mean_inter,cohens_d,auc,p_raw,p_fdr\n";
  for (const KLevelStats& level : levels) {
    out << level.k << "," << formatDouble(level.mean_intra) << ","
        << formatDouble(level.mean_inter) << "," << formatDouble(level.cohens_d) << ","
        << formatDouble(level.auc) << "," << formatDouble(level.p_raw) << ","
        << formatDouble(level.p_fdr) << "\n";
  }
  return out.str();
}

}  // namespace melograph
