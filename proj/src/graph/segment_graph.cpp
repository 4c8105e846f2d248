#include "graph/segment_graph.h"

#include <cmath>
#include <queue>

namespace melograph {

std::vector<std::vector<std::size_t>> SegmentGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (const GraphEdge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

bool SegmentGraph::connected() const {
  if (nodes.empty()) return true;
  auto adj = adjacency();
  std::vector<bool> seen(nodes.size(), false);
  std::queue<std::size_t> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t visited = 1;
  while (!frontier.empty()) {
    std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++visited;
        frontier.push(v);
      }
    }
  }
  return visited == nodes.size();
}

bool graphsEquivalent(const SegmentGraph& a, const SegmentGraph& b, double tol) {
  if (a.piece_id != b.piece_id || a.k != b.k) return false;
  if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size()) return false;
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    if (a.nodes[i].id != b.nodes[i].id || a.nodes[i].label != b.nodes[i].label) return false;
    if (std::abs(a.nodes[i].expectancy - b.nodes[i].expectancy) >
        tol * std::max(1.0, std::abs(a.nodes[i].expectancy))) {
      return false;
    }
  }
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    if (a.edges[i].u != b.edges[i].u || a.edges[i].v != b.edges[i].v) return false;
    if (std::abs(a.edges[i].weight - b.edges[i].weight) >
        tol * std::max(1.0, std::abs(a.edges[i].weight))) {
      return false;
    }
  }
  return true;
}

}  // namespace melograph
