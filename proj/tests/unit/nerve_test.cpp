#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "hatcc/generators.hpp"
#include "hatcc/nerve.hpp"

using namespace hatcc;

namespace {

int components_of(const FactorNerve& nerve) {
  std::vector<int> label(static_cast<std::size_t>(nerve.num_factors), -1);
  int count = 0;
  for (int s = 0; s < nerve.num_factors; ++s) {
    if (label[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> stack{s};
    label[static_cast<std::size_t>(s)] = count;
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      for (const auto& [g, e] : nerve.adjacency[static_cast<std::size_t>(f)]) {
        if (label[static_cast<std::size_t>(g)] < 0) {
          label[static_cast<std::size_t>(g)] = count;
          stack.push_back(g);
        }
      }
    }
    ++count;
  }
  return count;
}

TEST(Nerve, FourCycleEdgesAndInterfaces) {
  const auto nerve = build_factor_nerve(gen_four_cycle(Parity::Odd));
  ASSERT_EQ(nerve.edges.size(), 4U);
  std::set<std::vector<VarId>> interfaces;
  for (const auto& e : nerve.edges) {
    EXPECT_LT(e.u, e.v);
    EXPECT_EQ(e.interface.size(), 1U);
    EXPECT_NEAR(e.weight, std::log(2.0), 1e-15);
    interfaces.insert(e.interface);
  }
  EXPECT_EQ(interfaces, (std::set<std::vector<VarId>>{{0}, {1}, {2}, {3}}));
  // f1-f2 share B
  const int e01 = nerve.find_edge(0, 1);
  ASSERT_GE(e01, 0);
  EXPECT_EQ(nerve.edges[static_cast<std::size_t>(e01)].interface, (std::vector<VarId>{1}));
}

TEST(Nerve, DisjointScopesHaveNoEdge) {
  FactorGraph g;
  g.variables = make_variables(std::vector<int>{2, 2, 2, 2});
  g.factors = {{0, {0, 1}, {1, 1, 1, 1}}, {1, {2, 3}, {1, 1, 1, 1}}};
  const auto nerve = build_factor_nerve(g);
  EXPECT_TRUE(nerve.edges.empty());
  EXPECT_EQ(nerve.find_edge(0, 1), -1);
}

TEST(Nerve, WeightIsSumOfLogCardinalities) {
  FactorGraph g;
  g.variables = make_variables(std::vector<int>{3, 4, 2});
  g.factors = {{0, {0, 1, 2}, std::vector<double>(24, 1.0)}, {1, {1, 0}, std::vector<double>(12, 1.0)}};
  const auto nerve = build_factor_nerve(g);
  ASSERT_EQ(nerve.edges.size(), 1U);
  EXPECT_EQ(nerve.edges[0].interface, (std::vector<VarId>{0, 1}));
  EXPECT_NEAR(nerve.edges[0].weight, std::log(12.0), 1e-12);
}

TEST(Backbone, FourCycleHasOneChord) {
  const auto nerve = build_factor_nerve(gen_four_cycle(Parity::Odd));
  const auto bb = backbone(nerve);
  EXPECT_EQ(bb.tree_edges.size(), 3U);
  ASSERT_EQ(bb.chords.size(), 1U);
  EXPECT_EQ(bb.num_components(), 1);
}

TEST(Backbone, TreeNerveHasNoChords) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto nerve = build_factor_nerve(gen_random_tree(12, seed));
    EXPECT_TRUE(backbone(nerve).chords.empty());
  }
}

TEST(Backbone, ChordCountIsCycleRank) {
  std::vector<FactorGraph> graphs;
  for (std::uint64_t s = 0; s < 10; ++s) {
    graphs.push_back(gen_zk_sync(Topology::random(9, 0.3), 2, 0.1, 0.5, s).graph);
    graphs.push_back(gen_grid_mrf(3, 4, 2.0, 0.3, s));
    graphs.push_back(gen_random_tree(10, s));
  }
  for (const auto& g : graphs) {
    const auto nerve = build_factor_nerve(g);
    for (auto objective : {SpanningObjective::Maximum, SpanningObjective::Minimum}) {
      const auto bb = backbone(nerve, {objective, RootRule::MaxDegree});
      const int expected = static_cast<int>(nerve.edges.size()) - nerve.num_factors + components_of(nerve);
      EXPECT_EQ(static_cast<int>(bb.chords.size()), expected);
      EXPECT_EQ(bb.num_components(), components_of(nerve));
      EXPECT_EQ(bb.tree_edges.size() + bb.chords.size(), nerve.edges.size());
    }
  }
}

TEST(Backbone, RootHasMaximumDegree) {
  const auto g = gen_grid_mrf(3, 3, 2.0, 0.0, 0);
  const auto nerve = build_factor_nerve(g);
  const auto bb = backbone(nerve);
  int best = 0;
  for (int f = 0; f < nerve.num_factors; ++f) best = std::max(best, nerve.degree(f));
  EXPECT_EQ(nerve.degree(bb.roots[0]), best);
  const auto lex = backbone(nerve, {SpanningObjective::Maximum, RootRule::LexicographicFirst});
  EXPECT_EQ(lex.roots[0], 0);
}

TEST(Backbone, FromTreeEdgesRejectsCycles) {
  const auto nerve = build_factor_nerve(gen_four_cycle(Parity::Odd));
  EXPECT_THROW(backbone_from_tree_edges(nerve, {0, 1, 2, 3}), std::invalid_argument);
}

TEST(FundamentalCycle, PaperChordOrientation) {
  const auto nerve = build_factor_nerve(gen_four_cycle(Parity::Odd));
  // keep f1-f2, f2-f3, f3-f4 so that f4-f1 is the chord
  const auto bb = backbone_from_tree_edges(nerve, {nerve.find_edge(0, 1), nerve.find_edge(1, 2), nerve.find_edge(2, 3)});
  ASSERT_EQ(bb.chords.size(), 1U);
  const auto cyc = fundamental_cycle(nerve, bb, bb.chords[0]);
  EXPECT_EQ(cyc.factors, (std::vector<FactorId>{3, 2, 1, 0}));
  EXPECT_EQ(cyc.interfaces, (std::vector<std::vector<VarId>>{{3}, {2}, {1}, {0}}));
}

TEST(FundamentalCycle, LengthIsTreePathPlusOne) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = gen_grid_mrf(3, 4, 2.0, 0.0, s);
    const auto nerve = build_factor_nerve(g);
    const auto bb = backbone(nerve);
    for (int c : bb.chords) {
      const auto cyc = fundamental_cycle(nerve, bb, c);
      const auto& e = nerve.edges[static_cast<std::size_t>(c)];
      // tree path length between the endpoints, via depths and parents
      int a = e.u, b = e.v, path = 0;
      while (a != b) {
        if (bb.depth[static_cast<std::size_t>(a)] >= bb.depth[static_cast<std::size_t>(b)]) {
          a = bb.parent[static_cast<std::size_t>(a)];
        } else {
          b = bb.parent[static_cast<std::size_t>(b)];
        }
        ++path;
      }
      EXPECT_EQ(static_cast<int>(cyc.factors.size()), path + 1);
      EXPECT_EQ(cyc.interfaces.size(), cyc.factors.size());
      EXPECT_EQ(cyc.factors.front(), e.v);
      EXPECT_EQ(cyc.factors.back(), e.u);
      EXPECT_EQ(cyc.interfaces.back(), e.interface);
    }
  }
}

TEST(Dot, MentionsChordsAsDashed) {
  const auto nerve = build_factor_nerve(gen_four_cycle(Parity::Odd));
  const auto dot = nerve_to_dot(nerve, backbone(nerve));
  EXPECT_NE(dot.find("graph"), std::string::npos);
  EXPECT_NE(dot.find("dashed"), std::string::npos);
}

}  // namespace
