// Weighted undirected k-NN graph over a piece's segments.

#pragma once

#include <string>
#include <vector>

namespace melograph {

struct GraphNode {
  std::string id;        // segment id, "<piece>:<ordinal>"
  std::string label;     // "Bin|Symbol"; empty until labeled
  double expectancy = 0.0;
};

struct GraphEdge {
  std::size_t u = 0;  // u < v, node indices
  std::size_t v = 0;
  double weight = 0.0;
};

struct SegmentGraph {
  std::string piece_id;
  int k = 0;
  std::vector<GraphNode> nodes;
  std::vector<GraphEdge> edges;  // sorted by (u, v), no duplicates or loops

  /// Adjacency lists (neighbor indices), built on demand.
  std::vector<std::vector<std::size_t>> adjacency() const;

  /// True when every node can reach every other.
  bool connected() const;
};

/// Structural equality with weight/expectancy tolerance (for round-trip
/// checks against serialized precision).
bool graphsEquivalent(const SegmentGraph& a, const SegmentGraph& b, double tol = 1e-8);

}  // namespace melograph
