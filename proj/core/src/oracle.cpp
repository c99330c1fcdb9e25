#include "hatcc/oracle.hpp"

namespace hatcc {

ExactMarginals exact_marginals(const FactorGraph& graph, std::size_t cap) {
  const Semiring sr = graph.semiring;
  std::vector<int> cards;
  for (const auto& v : graph.variables) cards.push_back(v.cardinality);
  const std::size_t total = state_space_size(cards, cap);

  ExactMarginals out;
  out.z = sr.zero();
  out.unnormalized.resize(cards.size());
  for (std::size_t v = 0; v < cards.size(); ++v) {
    out.unnormalized[v].assign(static_cast<std::size_t>(cards[v]), sr.zero());
  }
  std::vector<State> x(cards.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    const double w = joint_weight(graph, x);
    out.z = sr.add(out.z, w);
    for (std::size_t v = 0; v < cards.size(); ++v) {
      auto& slot = out.unnormalized[v][static_cast<std::size_t>(x[v])];
      slot = sr.add(slot, w);
    }
    next_assignment(x, cards);
  }
  out.unsat = sr.is_zero(out.z);
  out.marginals = out.unnormalized;
  for (auto& m : out.marginals) {
    if (out.unsat) {
      std::fill(m.begin(), m.end(), 0.0);
    } else if (sr.kind() != SemiringKind::Boolean) {
      normalize_in_place(m, sr);
    }
  }
  return out;
}

ExactMap exact_map(const FactorGraph& graph, std::size_t cap) {
  const Semiring sr = graph.semiring;
  std::vector<int> cards;
  for (const auto& v : graph.variables) cards.push_back(v.cardinality);
  const std::size_t total = state_space_size(cards, cap);
  const bool minimize = sr.kind() == SemiringKind::MinSum;

  ExactMap best;
  std::vector<State> x(cards.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    const double w = joint_weight(graph, x);
    // strict improvement keeps the first (lexicographically smallest) optimum
    if (n == 0 || (minimize ? w < best.weight : w > best.weight)) {
      best.weight = w;
      best.assignment = x;
    }
    next_assignment(x, cards);
  }
  return best;
}

}  // namespace hatcc
