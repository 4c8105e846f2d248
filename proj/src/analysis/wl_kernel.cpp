#include "analysis/wl_kernel.h"

#include <algorithm>
#include <cmath>

#include "core/errors.h"
#include "core/hashing.h"

namespace melograph {

namespace {

// Separators below the label alphabet ("Bin|Symbol" and hex strings).
constexpr char kOwnSep = '\x1f';
constexpr char kNeighborSep = '\x1e';

}  // namespace

std::vector<std::vector<std::string>> wlLabelSequence(const SegmentGraph& graph, int h) {
  if (h < 0 || h > 10) throw ArgumentError("WL iteration count must be in [0, 10]");
  for (const GraphNode& node : graph.nodes) {
    if (node.label.empty()) throw LabelingError("unlabeled node " + node.id);
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(static_cast<std::size_t>(h) + 1);
  std::vector<std::string> current;
  current.reserve(graph.nodes.size());
  for (const GraphNode& node : graph.nodes) current.push_back(node.label);
  rows.push_back(current);

  auto adj = graph.adjacency();
  for (int iter = 1; iter <= h; ++iter) {
    std::vector<std::string> next(graph.nodes.size());
    for (std::size_t v = 0; v < graph.nodes.size(); ++v) {
      std::vector<std::string> neighbors;
      neighbors.reserve(adj[v].size());
      for (std::size_t u : adj[v]) neighbors.push_back(current[u]);
      std::sort(neighbors.begin(), neighbors.end());
      std::string signature = current[v];
      signature += kOwnSep;
      for (const std::string& n : neighbors) {
        signature += n;
        signature += kNeighborSep;
      }
      next[v] = fnv1a64Hex(signature);
    }
    rows.push_back(next);
    current = std::move(next);
  }
  return rows;
}

WlFeatureMap wlFeatures(const SegmentGraph& graph, int h) {
  WlFeatureMap features;
  auto rows = wlLabelSequence(graph, h);
  for (int iter = 0; iter < static_cast<int>(rows.size()); ++iter) {
    for (const std::string& label : rows[static_cast<std::size_t>(iter)]) {
      ++features[{iter, label}];
    }
  }
  return features;
}

double wlKernelRaw(const WlFeatureMap& a, const WlFeatureMap& b) {
  double dot = 0.0;
  auto it_a = a.begin();
  auto it_b = b.begin();
  while (it_a != a.end() && it_b != b.end()) {
    if (it_a->first < it_b->first) {
      ++it_a;
    } else if (it_b->first < it_a->first) {
      ++it_b;
    } else {
      dot += static_cast<double>(it_a->second) * static_cast<double>(it_b->second);
      ++it_a;
      ++it_b;
    }
  }
  return dot;
}

double wlKernel(const SegmentGraph& g1, const SegmentGraph& g2, int h) {
  WlFeatureMap f1 = wlFeatures(g1, h);
  WlFeatureMap f2 = wlFeatures(g2, h);
  double k11 = wlKernelRaw(f1, f1);
  double k22 = wlKernelRaw(f2, f2);
  if (k11 == 0.0 || k22 == 0.0) return 0.0;
  return wlKernelRaw(f1, f2) / std::sqrt(k11 * k22);
}

std::vector<std::string> wlDocument(const SegmentGraph& graph, int h) {
  std::vector<std::string> tokens;
  auto rows = wlLabelSequence(graph, h);
  for (const auto& row : rows) {
    tokens.insert(tokens.end(), row.begin(), row.end());
  }
  return tokens;
}

}  // namespace melograph
