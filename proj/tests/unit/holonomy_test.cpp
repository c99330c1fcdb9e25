#include <gtest/gtest.h>

#include <random>

#include "hatcc/generators.hpp"
#include "hatcc/holonomy.hpp"
#include "support/reference.hpp"

using namespace hatcc;

namespace {

// Support relation of factor f between source and target interface
// states, by walking its table directly.
ref::BoolMatrix brute_kernel(const FactorGraph& g, FactorId f, const std::vector<VarId>& src,
                             const std::vector<VarId>& dst) {
  const auto& fac = g.factors[static_cast<std::size_t>(f)];
  auto size_of = [&](const std::vector<VarId>& s) {
    int n = 1;
    for (VarId v : s) n *= g.cardinality(v);
    return n;
  };
  ref::BoolMatrix k(static_cast<std::size_t>(size_of(src)), std::vector<int>(static_cast<std::size_t>(size_of(dst)), 0));
  std::vector<int> x(g.num_variables(), 0);
  const std::size_t arity = fac.scope.size();
  for (std::size_t idx = 0; idx < fac.table.size(); ++idx) {
    std::size_t rem = idx;
    for (std::size_t p = arity; p-- > 0;) {
      const auto c = static_cast<std::size_t>(g.cardinality(fac.scope[p]));
      x[static_cast<std::size_t>(fac.scope[p])] = static_cast<int>(rem % c);
      rem /= c;
    }
    if (fac.table[idx] == 0.0) continue;
    auto code = [&](const std::vector<VarId>& s) {
      int c = 0;
      for (VarId v : s) c = c * g.cardinality(v) + x[static_cast<std::size_t>(v)];
      return c;
    };
    k[static_cast<std::size_t>(code(src))][static_cast<std::size_t>(code(dst))] = 1;
  }
  return k;
}

ref::BoolMatrix as_rows(const BitMatrix& m) {
  ref::BoolMatrix out(m.rows(), std::vector<int>(m.cols(), 0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = m.get(r, c) ? 1 : 0;
  }
  return out;
}

TEST(Transport, CopyAndNotKernels) {
  const auto g = gen_four_cycle(Parity::Odd);
  // f4 = (D, A) copy; f3 = (C, D) NOT
  const std::vector<VarId> a = {0}, c = {2}, d = {3};
  EXPECT_EQ(transport_kernel(g, 3, a, d).matrix.row_strings(), (std::vector<std::string>{"10", "01"}));
  EXPECT_EQ(transport_kernel(g, 2, d, c).matrix.row_strings(), (std::vector<std::string>{"01", "10"}));
}

TEST(Transport, ZeroPotentialGivesZeroKernel) {
  FactorGraph g;
  g.variables = make_variables(std::vector<int>{2, 3});
  g.factors = {{0, {0, 1}, std::vector<double>(6, 0.0)}};
  const std::vector<VarId> s = {0}, t = {1};
  const auto k = transport_kernel(g, 0, s, t);
  EXPECT_EQ(k.matrix.rows(), 2U);
  EXPECT_EQ(k.matrix.cols(), 3U);
  EXPECT_TRUE(k.matrix.is_zero());
}

TEST(Transport, SupportToleranceDropsSmallEntries) {
  FactorGraph g;
  g.variables = make_variables(std::vector<int>{2, 2});
  g.factors = {{0, {0, 1}, {0.95, 0.05, 0.05, 0.95}}};
  const std::vector<VarId> s = {0}, t = {1};
  EXPECT_EQ(transport_kernel(g, 0, s, t).matrix.count(), 4U);
  EXPECT_TRUE(transport_kernel(g, 0, s, t, 0.1).matrix.is_identity());
}

TEST(Holonomy, OddAndEvenFourCycles) {
  for (auto parity : {Parity::Odd, Parity::Even}) {
    const auto g = gen_four_cycle(parity);
    const auto nerve = build_factor_nerve(g);
    const auto bb = backbone(nerve);
    const auto h = holonomy_matrix(g, fundamental_cycle(nerve, bb, bb.chords[0]));
    if (parity == Parity::Odd) {
      EXPECT_EQ(h.row_strings(), (std::vector<std::string>{"01", "10"}));
      EXPECT_FALSE(is_trivial(h));
    } else {
      EXPECT_TRUE(h.is_identity());
      EXPECT_TRUE(is_trivial(h));
    }
  }
}

TEST(Holonomy, PaperChordGivesTheSameMatrix) {
  const auto g = gen_four_cycle(Parity::Odd);
  const auto nerve = build_factor_nerve(g);
  const auto bb = backbone_from_tree_edges(nerve, {nerve.find_edge(0, 1), nerve.find_edge(1, 2), nerve.find_edge(2, 3)});
  const auto h = holonomy_matrix(g, fundamental_cycle(nerve, bb, bb.chords[0]));
  EXPECT_EQ(h.row_strings(), (std::vector<std::string>{"01", "10"}));
}

TEST(Holonomy, UniformSupportCycleIsAllOnes) {
  const auto g = gen_zk_sync(Topology::cycle(5), 3, 0.3, 1.0, 2).graph;
  const auto nerve = build_factor_nerve(g);
  const auto bb = backbone(nerve);
  const auto cyc = fundamental_cycle(nerve, bb, bb.chords[0]);
  EXPECT_EQ(holonomy_matrix(g, cyc), BitMatrix::ones(3, 3));
}

TEST(Holonomy, MatchesBruteForceComposition) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = gen_grid_mrf(2, 3, 2.0, 0.0, static_cast<std::uint64_t>(trial));
    for (auto& f : g.factors) {
      for (double& x : f.table) {
        if (gen() % 3 == 0) x = 0.0;
      }
    }
    const auto nerve = build_factor_nerve(g);
    const auto bb = backbone(nerve);
    for (int c : bb.chords) {
      const auto cyc = fundamental_cycle(nerve, bb, c);
      const std::size_t k = cyc.factors.size() - 1;
      auto expected = brute_kernel(g, cyc.factors[0], cyc.interfaces[k], cyc.interfaces[0]);
      for (std::size_t i = 1; i <= k; ++i) {
        expected = ref::bool_product(expected, brute_kernel(g, cyc.factors[i], cyc.interfaces[i - 1], cyc.interfaces[i]));
      }
      EXPECT_EQ(as_rows(holonomy_matrix(g, cyc)), expected);
    }
  }
}

TEST(Holonomy, InterfaceCapIsEnforced) {
  FactorGraph g;
  g.variables = make_variables(std::vector<int>{300, 300});
  std::vector<double> t(90000, 1.0);
  g.factors = {{0, {0, 1}, t}, {1, {0, 1}, t}, {2, {0, 1}, t}};
  const auto nerve = build_factor_nerve(g);
  const auto bb = backbone(nerve);
  ASSERT_FALSE(bb.chords.empty());
  EXPECT_THROW(holonomy_matrix(g, fundamental_cycle(nerve, bb, bb.chords[0])), CapacityError);
}

TEST(Modes, Examples) {
  const auto swap = mode_quotient(BitMatrix::from_rows({"01", "10"}));
  EXPECT_EQ(swap.modes, (std::vector<std::vector<int>>{{0, 1}}));
  EXPECT_EQ(swap.fixed_point_mask, (std::vector<bool>{false, false}));

  const auto id = mode_quotient(BitMatrix::identity(2));
  EXPECT_EQ(id.modes, (std::vector<std::vector<int>>{{0}, {1}}));
  EXPECT_EQ(id.mode_of, (std::vector<int>{0, 1}));

  const auto zero = mode_quotient(BitMatrix(3, 3));
  EXPECT_EQ(zero.num_modes(), 3U);
  EXPECT_EQ(zero.fixed_point_mask, (std::vector<bool>{false, false, false}));
}

TEST(Modes, SccOfALongerChain) {
  // 0 -> 1 -> 2 -> 0, 3 -> 0, 4 alone with a self loop
  const auto h = BitMatrix::from_rows({"01000", "00100", "10000", "10000", "00001"});
  const auto q = mode_quotient(h);
  EXPECT_EQ(q.modes, (std::vector<std::vector<int>>{{0, 1, 2}, {3}, {4}}));
  EXPECT_EQ(q.fixed_point_mask, (std::vector<bool>{false, false, false, false, true}));
}

TEST(Trivial, Examples) {
  EXPECT_TRUE(is_trivial(BitMatrix::identity(4)));
  EXPECT_FALSE(is_trivial(BitMatrix::from_rows({"01", "10"})));
  EXPECT_FALSE(is_trivial(BitMatrix::from_rows({"11", "01"})));
}

TEST(BitMatrixOps, ProductMatchesNaive) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + gen() % 130;
    BitMatrix a(n, n), b(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        a.set(r, c, gen() % 7 == 0);
        b.set(r, c, gen() % 7 == 0);
      }
    }
    EXPECT_EQ(as_rows(a * b), ref::bool_product(as_rows(a), as_rows(b)));
    EXPECT_EQ(a.transpose().transpose(), a);
  }
}

TEST(Reports, OnePerChordWithModes) {
  const auto g = gen_four_cycle(Parity::Odd);
  const auto nerve = build_factor_nerve(g);
  const auto bb = backbone(nerve);
  const auto reports = holonomy_reports(g, nerve, bb);
  ASSERT_EQ(reports.size(), 1U);
  EXPECT_EQ(reports[0].quotient.num_modes(), 1U);
  EXPECT_FALSE(reports[0].trivial);
  EXPECT_EQ(reports[0].interface.size(), 1U);
}

}  // namespace
