#include "graph/knn.h"

#include <algorithm>
#include <set>

#include "core/errors.h"

namespace melograph {

SegmentGraph knnGraph(const DistanceMatrix& distances, int k, const std::string& piece_id) {
  const std::size_t n = distances.size();
  if (k < 1 || static_cast<std::size_t>(k) >= n) {
    throw ArgumentError("k must satisfy 1 <= k < n (k=" + std::to_string(k) +
                        ", n=" + std::to_string(n) + ")");
  }

  SegmentGraph graph;
  graph.piece_id = piece_id;
  graph.k = k;
  graph.nodes.reserve(n);
  for (const std::string& id : distances.ids) graph.nodes.push_back({id, "", 0.0});

  std::set<std::pair<std::size_t, std::size_t>> selected;
  std::vector<std::size_t> order(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    order.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) order.push_back(j);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      double da = distances.at(i, a);
      double db = distances.at(i, b);
      if (da != db) return da < db;
      return a < b;  // tie: lower segment ordinal
    });
    for (int r = 0; r < k; ++r) {
      std::size_t j = order[static_cast<std::size_t>(r)];
      selected.insert({std::min(i, j), std::max(i, j)});
    }
  }

  graph.edges.reserve(selected.size());
  for (const auto& [u, v] : selected) {
    graph.edges.push_back({u, v, 1.0 / (distances.at(u, v) + kInverseDistanceEpsilon)});
  }
  return graph;
}

std::string nodeLabel(ExpectancyBin bin, IRSymbol symbol) {
  return std::string(expectancyBinName(bin)) + "|" + irSymbolName(symbol);
}

void labelNodes(SegmentGraph& graph, std::span<const ExpectancyBin> bins,
                std::span<const IRSymbol> dominants, std::span<const double> expectancies) {
  if (bins.size() != graph.nodes.size() || dominants.size() != graph.nodes.size() ||
      expectancies.size() != graph.nodes.size()) {
    std::size_t covered = std::min({bins.size(), dominants.size(), expectancies.size()});
    std::string missing =
        covered < graph.nodes.size() ? graph.nodes[covered].id : graph.piece_id;
    throw LabelingError("missing label data for segment " + missing);
  }
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    graph.nodes[i].label = nodeLabel(bins[i], dominants[i]);
    graph.nodes[i].expectancy = expectancies[i];
  }
}

}  // namespace melograph
