#include <gtest/gtest.h>

#include <random>

#include "hatcc/compile.hpp"
#include "hatcc/generators.hpp"
#include "support/reference.hpp"

using namespace hatcc;

namespace {

PotentialSlice random_global(const FactorGraph& g, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  PotentialSlice s;
  for (const auto& v : g.variables) {
    s.scope.push_back(v.id);
    s.cardinalities.push_back(v.cardinality);
  }
  std::size_t n = 1;
  for (int c : s.cardinalities) n *= static_cast<std::size_t>(c);
  for (std::size_t i = 0; i < n; ++i) s.table.push_back(d(gen));
  return s;
}

TEST(Functoriality, NestedRestrictionsCompose) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = ref::random_graph({2, 3, 2, 2}, {{0, 1, 2, 3}}, static_cast<std::uint64_t>(trial));
    const auto u = factor_slice(g, 0);
    std::vector<VarId> v_scope, w_scope;
    for (VarId x : u.scope) {
      if (gen() % 3) v_scope.push_back(x);
    }
    for (VarId x : v_scope) {
      if (gen() % 2) w_scope.push_back(x);
    }
    for (auto s : {Semiring::sum_product(), Semiring::max_product(), Semiring::min_sum()}) {
      const auto direct = restrict_to(u, w_scope, s);
      const auto staged = restrict_to(restrict_to(u, v_scope, s), w_scope, s);
      ASSERT_EQ(direct.table.size(), staged.table.size());
      for (std::size_t i = 0; i < direct.table.size(); ++i) {
        EXPECT_NEAR(direct.table[i], staged.table[i], 1e-12 * std::max(1.0, std::abs(direct.table[i])));
      }
    }
  }
}

TEST(Descent, RestrictionsOfAGlobalTableAreCompatible) {
  const auto g = gen_chain(5, true, 1);
  const auto global = random_global(g, 4);
  const std::vector<std::vector<std::vector<VarId>>> covers = {
      {{0, 1, 2}, {2, 3, 4}, {4, 0}},
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}},
      {{0, 1, 2, 3, 4}},
  };
  for (const auto& cover : covers) {
    std::vector<PotentialSlice> tables;
    for (const auto& piece : cover) tables.push_back(restrict_to(global, piece, g.semiring));
    const auto report = check_descent_datum(g, cover, tables);
    EXPECT_TRUE(report.compatible);
    EXPECT_LT(report.max_discrepancy, 1e-12);
  }
}

TEST(Descent, SinglePieceHasNoOverlaps) {
  const auto g = gen_four_cycle(Parity::Even);
  const auto global = random_global(g, 1);
  const auto report = check_descent_datum(g, {{0, 1, 2, 3}}, {global});
  EXPECT_TRUE(report.compatible);
  EXPECT_TRUE(report.overlaps.empty());
}

TEST(Descent, InvalidCoverIsRejected) {
  const auto g = gen_four_cycle(Parity::Even);
  const auto global = random_global(g, 1);
  const std::vector<std::vector<VarId>> missing = {{0, 1}, {1, 2}};
  std::vector<PotentialSlice> tables;
  for (const auto& piece : missing) tables.push_back(restrict_to(global, piece, g.semiring));
  EXPECT_THROW(check_descent_datum(g, missing, tables), std::invalid_argument);
}

TEST(Descent, HolonomyCounterexampleFails) {
  const auto g = gen_four_cycle(Parity::Odd);
  const auto nerve = build_factor_nerve(g);
  const auto bb = backbone(nerve);
  const auto cyc = fundamental_cycle(nerve, bb, bb.chords[0]);
  const auto cx = holonomy_counterexample(g, cyc);
  ASSERT_TRUE(cx.has_value());
  EXPECT_NE(cx->start, cx->end);
  const auto report = check_descent_datum(g, cx->cover, cx->beliefs);
  EXPECT_FALSE(report.compatible);
  // every tree overlap agrees; only the chord overlap disagrees
  int bad = 0;
  for (const auto& o : report.overlaps) bad += o.discrepancy > 0.0 ? 1 : 0;
  EXPECT_EQ(bad, 1);
}

TEST(Descent, TrivialHolonomyHasNoCounterexample) {
  const auto g = gen_four_cycle(Parity::Even);
  const auto nerve = build_factor_nerve(g);
  const auto bb = backbone(nerve);
  EXPECT_FALSE(holonomy_counterexample(g, fundamental_cycle(nerve, bb, bb.chords[0])).has_value());
}

TEST(Gluing, OrderIndependentOnJunctionTreeMarginals) {
  const auto g = ref::random_graph({2, 3, 2, 2}, {{0, 1}, {1, 2}, {2, 3}}, 12);
  const auto exact = ref::enumerate(g);
  // exact joint as a table over (0, 1, 2, 3)
  PotentialSlice joint{{0, 1, 2, 3}, {2, 3, 2, 2}, {}};
  std::vector<int> x(4, 0);
  do {
    double w = 1.0;
    for (int f = 0; f < 3; ++f) w *= ref::factor_value(g, f, x);
    joint.table.push_back(w / exact.z);
  } while (next_assignment(x, joint.cardinalities));
  std::vector<PotentialSlice> pieces;
  for (const auto& s : std::vector<std::vector<VarId>>{{0, 1}, {1, 2}, {2, 3}}) {
    pieces.push_back(restrict_to(joint, s, Semiring::sum_product()));
  }
  for (const auto& order : std::vector<std::vector<int>>{{0, 1, 2}, {2, 1, 0}, {1, 0, 2}, {1, 2, 0}}) {
    const auto glued = glue_descent_datum(pieces, order);
    ASSERT_EQ(glued.table.size(), joint.table.size());
    for (std::size_t i = 0; i < joint.table.size(); ++i) EXPECT_NEAR(glued.table[i], joint.table[i], 1e-14);
  }
  EXPECT_THROW(glue_descent_datum(pieces, {0, 2, 1}), std::invalid_argument);
}

}  // namespace
