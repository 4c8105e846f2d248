// Tests for Kernighan-Lin bisection.

#include <random>

#include <gtest/gtest.h>

#include "analysis/kernighan_lin.h"
#include "core/errors.h"

namespace melograph {
namespace {

SegmentGraph weightedGraph(std::size_t n,
                           const std::vector<std::tuple<std::size_t, std::size_t, double>>& edges) {
  SegmentGraph g;
  g.piece_id = "kl";
  for (std::size_t i = 0; i < n; ++i) {
    g.nodes.push_back({"kl:" + std::to_string(i), "Medium|P", 0.5});
  }
  for (const auto& [u, v, w] : edges) g.edges.push_back({u, v, w});
  return g;
}

/// Two triangles (heavy internal edges) joined by one light bridge.
SegmentGraph twoCliques() {
  return weightedGraph(6, {{0, 1, 5.0},
                           {0, 2, 5.0},
                           {1, 2, 5.0},
                           {3, 4, 5.0},
                           {3, 5, 5.0},
                           {4, 5, 5.0},
                           {2, 3, 0.5}});
}

/// Exhaustive balanced-split oracle: minimum cut over all 3+3 splits.
double bestBalancedCut(const SegmentGraph& g) {
  const std::size_t n = g.nodes.size();
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != static_cast<int>(n / 2)) continue;
    std::vector<int> side(n);
    for (std::size_t v = 0; v < n; ++v) side[v] = (mask >> v) & 1;
    best = std::min(best, cutCost(g, side));
  }
  return best;
}

TEST(KlBisect, SeparatesTwoCliques) {
  SegmentGraph g = twoCliques();
  KlResult result = klBisect(g, {.seed = 1});
  EXPECT_EQ(result.a.nodes.size(), 3u);
  EXPECT_EQ(result.b.nodes.size(), 3u);
  // 20-way ordered balanced-split oracle (10 unordered splits).
  EXPECT_NEAR(result.final_cut, bestBalancedCut(g), 1e-12);
  EXPECT_NEAR(result.final_cut, 0.5, 1e-12);
  // The cliques stay whole on their sides.
  EXPECT_EQ(result.side[0], result.side[1]);
  EXPECT_EQ(result.side[1], result.side[2]);
  EXPECT_EQ(result.side[3], result.side[4]);
  EXPECT_EQ(result.side[4], result.side[5]);
  EXPECT_NE(result.side[0], result.side[3]);
}

TEST(KlBisect, SeparatesCliquesFromAnySeed) {
  SegmentGraph g = twoCliques();
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    KlResult result = klBisect(g, {.seed = seed});
    EXPECT_NEAR(result.final_cut, 0.5, 1e-12) << "seed " << seed;
  }
}

TEST(KlBisect, UniformCompleteGraphBalancesAndTerminates) {
  std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
  for (std::size_t u = 0; u < 7; ++u) {
    for (std::size_t v = u + 1; v < 7; ++v) edges.emplace_back(u, v, 1.0);
  }
  SegmentGraph g = weightedGraph(7, edges);
  KlResult result = klBisect(g, {.seed = 3});
  EXPECT_LE(std::abs(static_cast<int>(result.a.nodes.size()) -
                     static_cast<int>(result.b.nodes.size())),
            1);
  // Any balanced split of K7 with uniform weights cuts 4*3 = 12 edges.
  EXPECT_NEAR(result.final_cut, 12.0, 1e-12);
}

TEST(KlBisect, NeverWorseThanSeededSplit) {
  std::mt19937_64 rng(179);
  std::uniform_real_distribution<double> weight(0.1, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 4 + rng() % 9;
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = u + 1; v < n; ++v) {
        if (rng() % 2 == 0) edges.emplace_back(u, v, weight(rng));
      }
    }
    SegmentGraph g = weightedGraph(n, edges);
    KlResult result = klBisect(g, {.seed = trial * 7ull + 1});
    EXPECT_LE(result.final_cut, result.initial_cut + 1e-12);
    EXPECT_LE(std::abs(static_cast<int>(result.a.nodes.size()) -
                       static_cast<int>(result.b.nodes.size())),
              1);
  }
}

TEST(KlBisect, TooSmallGraphRejected) {
  SegmentGraph g = weightedGraph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  EXPECT_THROW(klBisect(g), ArgumentError);
}

TEST(KlBisect, InducedSubgraphsRetainLabelsAndEdges) {
  SegmentGraph g = twoCliques();
  g.nodes[0].label = "High|P";
  g.nodes[3].label = "Low|R";
  KlResult result = klBisect(g, {.seed = 1});
  // Each half is a triangle with its internal edges intact.
  EXPECT_EQ(result.a.edges.size(), 3u);
  EXPECT_EQ(result.b.edges.size(), 3u);
  bool high_found = false;
  bool low_found = false;
  for (const GraphNode& node : result.a.nodes) high_found |= node.label == "High|P";
  for (const GraphNode& node : result.b.nodes) high_found |= node.label == "High|P";
  for (const GraphNode& node : result.a.nodes) low_found |= node.label == "Low|R";
  for (const GraphNode& node : result.b.nodes) low_found |= node.label == "Low|R";
  EXPECT_TRUE(high_found);
  EXPECT_TRUE(low_found);
  for (const GraphEdge& e : result.a.edges) EXPECT_NEAR(e.weight, 5.0, 1e-12);
}

TEST(KlBisect, DeterministicForFixedSeed) {
  SegmentGraph g = twoCliques();
  KlResult r1 = klBisect(g, {.seed = 11});
  KlResult r2 = klBisect(g, {.seed = 11});
  EXPECT_EQ(r1.side, r2.side);
}

}  // namespace
}  // namespace melograph
