// GraphML / DOT / JSON serialization of segment graphs.

#pragma once

#include <string>

#include "graph/segment_graph.h"

namespace melograph {

/// GraphML with label and expectancy node attributes and weighted edges.
/// Node ordering is stable; floats carry 9 significant digits.
std::string graphToGraphml(const SegmentGraph& graph);

/// Inverse of graphToGraphml (used for round-trip checks and external
/// graph import).
SegmentGraph graphFromGraphml(const std::string& text);

/// Graphviz DOT rendering of the same attributes.
std::string graphToDot(const SegmentGraph& graph);

/// JSON adjacency dump: ids, labels, weighted edge list.
std::string graphToAdjacencyJson(const SegmentGraph& graph);

}  // namespace melograph
