#include "analysis/kernighan_lin.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "core/errors.h"

namespace melograph {

double cutCost(const SegmentGraph& graph, const std::vector<int>& side) {
  double cut = 0.0;
  for (const GraphEdge& e : graph.edges) {
    if (side[e.u] != side[e.v]) cut += e.weight;
  }
  return cut;
}

SegmentGraph inducedSubgraph(const SegmentGraph& graph, const std::vector<int>& side,
                             int which) {
  SegmentGraph sub;
  sub.piece_id = graph.piece_id;
  sub.k = graph.k;
  std::vector<std::size_t> remap(graph.nodes.size(), SIZE_MAX);
  for (std::size_t v = 0; v < graph.nodes.size(); ++v) {
    if (side[v] == which) {
      remap[v] = sub.nodes.size();
      sub.nodes.push_back(graph.nodes[v]);
    }
  }
  for (const GraphEdge& e : graph.edges) {
    if (side[e.u] == which && side[e.v] == which) {
      sub.edges.push_back({remap[e.u], remap[e.v], e.weight});
    }
  }
  return sub;
}

KlResult klBisect(const SegmentGraph& graph, const KlOptions& options) {
  const std::size_t n = graph.nodes.size();
  if (n < 4) {
    throw ArgumentError("graph too small to bisect: " + std::to_string(n) + " nodes");
  }

  // Dense weight lookup; segment graphs stay small.
  std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
  for (const GraphEdge& e : graph.edges) {
    w[e.u][e.v] = e.weight;
    w[e.v][e.u] = e.weight;
  }

  // Deterministic seeded balanced split: shuffle, first ceil(n/2) on side 0.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(options.seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> side(n, 1);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) side[order[i]] = 0;

  KlResult result;
  result.initial_cut = cutCost(graph, side);

  for (int pass = 0; pass < options.max_passes; ++pass) {
    // D value: external minus internal connection cost.
    std::vector<double> d_value(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t u = 0; u < n; ++u) {
        if (u == v) continue;
        d_value[v] += side[u] != side[v] ? w[v][u] : -w[v][u];
      }
    }

    std::vector<bool> locked(n, false);
    std::vector<std::pair<std::size_t, std::size_t>> swaps;
    std::vector<double> gains;
    std::size_t max_swaps = std::min(std::count(side.begin(), side.end(), 0),
                                     std::count(side.begin(), side.end(), 1));

    std::vector<int> work_side = side;
    for (std::size_t step = 0; step < max_swaps; ++step) {
      double best_gain = 0.0;
      std::size_t best_a = SIZE_MAX;
      std::size_t best_b = SIZE_MAX;
      bool found = false;
      for (std::size_t a = 0; a < n; ++a) {
        if (locked[a] || work_side[a] != 0) continue;
        for (std::size_t b = 0; b < n; ++b) {
          if (locked[b] || work_side[b] != 1) continue;
          double gain = d_value[a] + d_value[b] - 2.0 * w[a][b];
          if (!found || gain > best_gain) {
            best_gain = gain;
            best_a = a;
            best_b = b;
            found = true;
          }
        }
      }
      if (!found) break;
      locked[best_a] = true;
      locked[best_b] = true;
      swaps.emplace_back(best_a, best_b);
      gains.push_back(best_gain);
      // Update D values of unlocked nodes as if the pair were swapped.
      for (std::size_t v = 0; v < n; ++v) {
        if (locked[v]) continue;
        if (work_side[v] == 0) {
          d_value[v] += 2.0 * w[v][best_a] - 2.0 * w[v][best_b];
        } else {
          d_value[v] += 2.0 * w[v][best_b] - 2.0 * w[v][best_a];
        }
      }
    }

    // Best prefix of cumulative gains.
    double best_total = 0.0;
    double running = 0.0;
    std::size_t best_prefix = 0;
    for (std::size_t i = 0; i < gains.size(); ++i) {
      running += gains[i];
      if (running > best_total) {
        best_total = running;
        best_prefix = i + 1;
      }
    }
    if (best_prefix == 0 || best_total <= 0.0) break;
    for (std::size_t i = 0; i < best_prefix; ++i) {
      std::swap(side[swaps[i].first], side[swaps[i].second]);
    }
  }

  result.side = side;
  result.final_cut = cutCost(graph, side);
  result.a = inducedSubgraph(graph, side, 0);
  result.b = inducedSubgraph(graph, side, 1);
  return result;
}

}  // namespace melograph
