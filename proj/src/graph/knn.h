// k-NN graph construction and node labeling.

#pragma once

#include <span>
#include <string>
#include <vector>

#include "core/ir_symbol.h"
#include "dtw/distance_matrix.h"
#include "graph/segment_graph.h"
#include "ir/expectancy.h"

namespace melograph {

// Guards identical segments (distance 0) in the inverse-distance weight.
constexpr double kInverseDistanceEpsilon = 1e-9;

/// Connects each node to its k smallest-distance neighbors (ties broken by
/// lower ordinal) and symmetrizes by union. Edge weight: 1/(d + epsilon).
/// Requires 1 <= k < n.
SegmentGraph knnGraph(const DistanceMatrix& distances, int k,
                      const std::string& piece_id = "");

/// Attaches "Bin|Symbol" labels and expectancy attributes, one entry per
/// node in order. Throws LabelingError (naming the segment) on a count
/// mismatch.
void labelNodes(SegmentGraph& graph, std::span<const ExpectancyBin> bins,
                std::span<const IRSymbol> dominants, std::span<const double> expectancies);

/// The label string for a bin/symbol pair.
std::string nodeLabel(ExpectancyBin bin, IRSymbol symbol);

}  // namespace melograph
