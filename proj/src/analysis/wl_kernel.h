// Weisfeiler-Lehman subtree kernel over labeled segment graphs.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "graph/segment_graph.h"

namespace melograph {

/// Per-node label sequences across refinement iterations. Row t holds the
/// labels after t iterations: row 0 is the raw labels; each refinement
/// maps a node to a canonical 64-bit hash (hex) of its own label plus the
/// sorted multiset of neighbor labels. Edge weights are ignored.
/// Throws LabelingError when a node label is empty.
std::vector<std::vector<std::string>> wlLabelSequence(const SegmentGraph& graph, int h);

/// Subtree feature counts keyed by (iteration, label).
using WlFeatureMap = std::map<std::pair<int, std::string>, std::int64_t>;
WlFeatureMap wlFeatures(const SegmentGraph& graph, int h);

/// Raw kernel: dot product of feature count vectors.
double wlKernelRaw(const WlFeatureMap& a, const WlFeatureMap& b);

/// Normalized kernel K(a,b) / sqrt(K(a,a) K(b,b)), in [0, 1].
double wlKernel(const SegmentGraph& g1, const SegmentGraph& g2, int h);

/// All WL labels of all nodes at iterations 0..h, as one token list (the
/// graph's "document" for whole-graph embedding). Tokens appear in node
/// order within each iteration.
std::vector<std::string> wlDocument(const SegmentGraph& graph, int h);

}  // namespace melograph
