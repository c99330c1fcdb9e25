#pragma once

#include <cstddef>
#include <vector>

#include "hatcc/factor_graph.hpp"

namespace hatcc {

inline constexpr std::size_t kDefaultOracleCap = std::size_t{1} << 20;

struct ExactMarginals {
  double z = 0.0;  // semiring total over all assignments
  bool unsat = false;
  std::vector<std::vector<double>> unnormalized;  // per-variable add-folds
  std::vector<std::vector<double>> marginals;     // normalized; zeros when unsat
};

/// Enumerates every joint assignment (last variable fastest). Throws
/// CapacityError when the state space exceeds `cap`.
ExactMarginals exact_marginals(const FactorGraph& graph, std::size_t cap = kDefaultOracleCap);

struct ExactMap {
  std::vector<State> assignment;
  double weight = 0.0;  // best value under the semiring's order
};

/// Best assignment under max (sum_product, max_product, boolean) or min
/// (min_sum); the lexicographically smallest optimum wins ties.
ExactMap exact_map(const FactorGraph& graph, std::size_t cap = kDefaultOracleCap);

}  // namespace hatcc
