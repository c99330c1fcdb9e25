#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "hatcc/factor_graph.hpp"
#include "hatcc/generators.hpp"
#include "support/reference.hpp"

using namespace hatcc;

namespace {

FactorGraph pairwise(std::vector<double> table) {
  FactorGraph g;
  g.variables = {{0, 2, "A"}, {1, 2, "B"}};
  g.factors = {{0, {0, 1}, std::move(table)}};
  return g;
}

bool has_kind(const std::vector<Violation>& vs, ViolationKind kind) {
  for (const auto& v : vs) {
    if (v.kind == kind) return true;
  }
  return false;
}

TEST(Validate, FourCycleIsWellFormed) { EXPECT_TRUE(validate(gen_four_cycle(Parity::Odd)).empty()); }

TEST(Validate, TableLengthMismatch) {
  const auto vs = validate(pairwise({1, 2, 3}));
  ASSERT_FALSE(vs.empty());
  EXPECT_TRUE(has_kind(vs, ViolationKind::TableLengthMismatch));
  EXPECT_EQ(vs.front().factor_id, 0);
}

TEST(Validate, UnknownVariable) {
  auto g = pairwise({1, 1, 1, 1});
  g.factors[0].scope = {0, 2};
  EXPECT_TRUE(has_kind(validate(g), ViolationKind::UnknownVariable));
}

TEST(Validate, RejectsNegativeAndNaNUnderSumProduct) {
  EXPECT_TRUE(has_kind(validate(pairwise({1, -1, 1, 1})), ViolationKind::InvalidEntry));
  EXPECT_TRUE(has_kind(validate(pairwise({1, std::nan(""), 1, 1})), ViolationKind::InvalidEntry));
}

TEST(Validate, DuplicateScopeAndEmptyScope) {
  auto g = pairwise({1, 1, 1, 1});
  g.factors[0].scope = {0, 0};
  EXPECT_TRUE(has_kind(validate(g), ViolationKind::DuplicateScopeVariable));
  g.factors[0].scope = {};
  g.factors[0].table = {1.0};
  EXPECT_TRUE(has_kind(validate(g), ViolationKind::EmptyScope));
}

TEST(Validate, RequireValidThrowsWithAllViolations) {
  auto g = pairwise({1, -1, 1});
  try {
    require_valid(g);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_GE(e.violations().size(), 1U);
  }
}

TEST(JointWeight, PairwiseEntry) {
  const auto g = pairwise({2, 1, 1, 2});
  const std::vector<State> x = {0, 0};
  EXPECT_DOUBLE_EQ(joint_weight(g, x), 2.0);
}

TEST(JointWeight, EmptyProductIsOne) {
  FactorGraph g;
  g.variables = make_variables(std::vector<int>{2, 3});
  const std::vector<State> x = {1, 2};
  EXPECT_EQ(joint_weight(g, x), 1.0);
  g.semiring = Semiring::min_sum();
  EXPECT_EQ(joint_weight(g, x), 0.0);
}

TEST(JointWeight, OddNotCycleHasNoSupport) {
  const auto g = gen_four_cycle(Parity::Odd);
  std::vector<State> x(4, 0);
  std::vector<int> cards(4, 2);
  do {
    EXPECT_EQ(joint_weight(g, x), 0.0);
  } while (next_assignment(x, cards));
}

TEST(Restrict, SumProductAndMinSum) {
  const auto g = pairwise({2, 1, 1, 2});
  const auto slice = factor_slice(g, 0);
  const std::vector<VarId> a = {0};
  EXPECT_EQ(restrict_to(slice, a, Semiring::sum_product()).table, (std::vector<double>{3, 3}));
  EXPECT_EQ(restrict_to(slice, a, Semiring::min_sum()).table, (std::vector<double>{1, 1}));
  EXPECT_EQ(restrict_to(slice, slice.scope, Semiring::sum_product()), slice);
}

TEST(Restrict, MatchesBruteForceOnRandomTables) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::vector<int> cards = {2, 3, 2, 4};
    const auto g = ref::random_graph(cards, {{3, 0, 2, 1}}, static_cast<std::uint64_t>(trial));
    const auto slice = factor_slice(g, 0);
    std::vector<VarId> keep;
    for (int v : {0, 1, 2, 3}) {
      if (gen() % 2) keep.push_back(v);
    }
    if (keep.empty()) keep.push_back(1);
    for (auto s : {Semiring::sum_product(), Semiring::max_product(), Semiring::min_sum()}) {
      const auto got = restrict_to(slice, keep, s);
      const auto want = ref::marginalize(g.factors[0].scope, {4, 2, 2, 3}, g.factors[0].table, keep, s);
      ASSERT_EQ(got.table.size(), want.size());
      for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(got.table[i], want[i], 1e-12);
    }
  }
}

TEST(Restrict, RejectsNonSubset) {
  const auto slice = factor_slice(pairwise({1, 1, 1, 1}), 0);
  const std::vector<VarId> bad = {5};
  EXPECT_THROW(restrict_to(slice, bad, Semiring::sum_product()), std::invalid_argument);
}

TEST(Canonicalize, SortsScopeAndPermutesTable) {
  FactorGraph g;
  g.variables = make_variables(std::vector<int>{2, 3});
  g.factors = {{0, {1, 0}, {1, 2, 3, 4, 5, 6}}};
  const auto c = canonicalize(factor_slice(g, 0));
  EXPECT_EQ(c.scope, (std::vector<VarId>{0, 1}));
  EXPECT_EQ(c.table, (std::vector<double>{1, 3, 5, 2, 4, 6}));
}

TEST(StateSpace, CapIsEnforced) {
  const std::vector<int> cards(30, 2);
  EXPECT_THROW(state_space_size(cards, 1 << 20), CapacityError);
  EXPECT_EQ(state_space_size(std::vector<int>{2, 3, 4}), 24U);
}

}  // namespace
