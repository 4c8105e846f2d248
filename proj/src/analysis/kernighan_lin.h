// Kernighan-Lin weighted graph bisection.

#pragma once

#include <cstdint>
#include <vector>

#include "graph/segment_graph.h"

namespace melograph {

struct KlOptions {
  std::uint64_t seed = 1;  // seeds the initial balanced split
  int max_passes = 50;
};

struct KlResult {
  SegmentGraph a;            // induced subgraph of side 0
  SegmentGraph b;            // induced subgraph of side 1
  std::vector<int> side;     // 0/1 per node of the input graph
  double initial_cut = 0.0;  // weighted cut of the seeded split
  double final_cut = 0.0;
};

/// Bisects into halves whose sizes differ by at most one, starting from a
/// seeded random balanced split and running full improvement passes
/// (gain-ranked pair swaps, best-prefix commit) until no pass improves the
/// weighted cut. Throws ArgumentError for graphs of fewer than 4 nodes.
KlResult klBisect(const SegmentGraph& graph, const KlOptions& options = {});

/// Weighted cut cost of a given 0/1 assignment.
double cutCost(const SegmentGraph& graph, const std::vector<int>& side);

/// Induced subgraph over the nodes with the given side value; node labels
/// and internal edges are retained.
SegmentGraph inducedSubgraph(const SegmentGraph& graph, const std::vector<int>& side,
                             int which);

}  // namespace melograph
