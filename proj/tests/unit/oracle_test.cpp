#include <gtest/gtest.h>

#include <cmath>

#include "hatcc/generators.hpp"
#include "hatcc/oracle.hpp"
#include "support/reference.hpp"

using namespace hatcc;

namespace {

TEST(Oracle, SinglePairwiseFactor) {
  FactorGraph g;
  g.variables = make_variables(std::vector<int>{2, 2});
  g.factors = {{0, {0, 1}, {2, 1, 1, 2}}};
  const auto r = exact_marginals(g);
  EXPECT_DOUBLE_EQ(r.z, 6.0);
  EXPECT_FALSE(r.unsat);
  for (const auto& m : r.marginals) EXPECT_EQ(m, (std::vector<double>{0.5, 0.5}));
}

TEST(Oracle, OddCycleIsUnsat) {
  const auto r = exact_marginals(gen_four_cycle(Parity::Odd));
  EXPECT_EQ(r.z, 0.0);
  EXPECT_TRUE(r.unsat);
}

TEST(Oracle, NoFactors) {
  FactorGraph g;
  g.variables = make_variables(std::vector<int>{2, 2, 2});
  const auto r = exact_marginals(g);
  EXPECT_DOUBLE_EQ(r.z, 8.0);
  for (const auto& m : r.marginals) EXPECT_EQ(m, (std::vector<double>{0.5, 0.5}));
}

TEST(Oracle, MatchesIndependentEnumeration) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_grid_mrf(3, 3, 1.5, 0.8, seed);
    const auto r = exact_marginals(g);
    const auto e = ref::enumerate(g);
    EXPECT_NEAR(r.z, e.z, 1e-12 * e.z);
    EXPECT_LT(ref::max_tv(r.marginals, e.marginals), 1e-13);
  }
}

TEST(Oracle, CapIsEnforced) {
  FactorGraph g;
  g.variables = make_variables(std::vector<int>(21, 2));
  EXPECT_THROW(exact_marginals(g), CapacityError);
  EXPECT_NO_THROW(exact_marginals(g, std::size_t{1} << 21));
}

TEST(Map, UnaryAndTies) {
  FactorGraph g;
  g.variables = make_variables(std::vector<int>{2});
  g.factors = {{0, {0}, {3, 1}}};
  auto m = exact_map(g);
  EXPECT_EQ(m.assignment, (std::vector<State>{0}));
  EXPECT_DOUBLE_EQ(m.weight, 3.0);

  FactorGraph sym;
  sym.variables = make_variables(std::vector<int>{2, 2});
  sym.factors = {{0, {0, 1}, {1, 1, 1, 1}}};
  EXPECT_EQ(exact_map(sym).assignment, (std::vector<State>{0, 0}));
}

TEST(Map, EvenCyclePicksAllZeros) {
  const auto m = exact_map(gen_four_cycle(Parity::Even));
  EXPECT_EQ(m.assignment, (std::vector<State>{0, 0, 0, 0}));
  EXPECT_DOUBLE_EQ(m.weight, 1.0);
}

TEST(Map, MinSumPicksSmallestCost) {
  FactorGraph g;
  g.semiring = Semiring::min_sum();
  g.variables = make_variables(std::vector<int>{3});
  g.factors = {{0, {0}, {4, 1, 2}}};
  const auto m = exact_map(g);
  EXPECT_EQ(m.assignment, (std::vector<State>{1}));
  EXPECT_DOUBLE_EQ(m.weight, 1.0);
}

}  // namespace
