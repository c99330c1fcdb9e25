#pragma once

#include <optional>
#include <vector>

#include "hatcc/bit_matrix.hpp"
#include "hatcc/bp_engine.hpp"
#include "hatcc/factor_graph.hpp"

namespace hatcc {

/// Variable-level spanning forest of a pairwise model. Unary factors are
/// neither tree nor off-tree edges.
struct PairwiseForest {
  VarId base = 0;
  std::vector<VarId> parent;              // -1 at component roots
  std::vector<FactorId> parent_factor;    // tree factor joining v to its parent
  std::vector<int> depth;
  std::vector<int> component;
  std::vector<FactorId> tree_factors;     // ascending
  std::vector<FactorId> off_tree_factors; // ascending
  std::vector<FactorId> unary_factors;    // ascending
};

/// BFS from `base` (then from the smallest unvisited variable of every other
/// component). Throws std::invalid_argument on factors of arity above two.
PairwiseForest pairwise_forest(const FactorGraph& graph, VarId base);

/// Highest pairwise degree, ties to the smallest id.
VarId default_base_vertex(const FactorGraph& graph);

/// One Boolean |Ω(b)|x|Ω(b)| matrix per off-tree factor in b's component:
/// transport along the tree from b to one endpoint, across the factor, and
/// back to b along the tree.
std::vector<BitMatrix> base_generators(const FactorGraph& graph, const PairwiseForest& forest,
                                       double support_tolerance = 0.0);
std::vector<BitMatrix> base_generators(const FactorGraph& graph, VarId base, double support_tolerance = 0.0);

/// Mutual-reachability classes of the union of the generators, ordered by
/// smallest state. With `strict_group` every generator must be a
/// permutation (std::invalid_argument otherwise).
std::vector<std::vector<int>> orbit_partition(const std::vector<BitMatrix>& generators, std::size_t fiber_size,
                                              bool strict_group = false);

enum class SectorMode { DecompositionOnly, SectorBp };

struct SectorOptions {
  std::optional<VarId> base;
  SectorMode mode = SectorMode::SectorBp;
  double support_tolerance = 0.0;
  bool strict_group = false;
  BpOptions bp;  // used in SectorBp mode
};

struct SectorRun {
  std::vector<int> orbit;
  double log_evidence = 0.0;  // log Z_l (Bethe estimate in SectorBp mode)
  double weight = 0.0;
  std::vector<std::vector<double>> marginals;
  bool converged = true;
  int iterations = 0;
  double final_residual = 0.0;
};

struct SectorResult {
  bool unsat = false;
  SectorMode mode = SectorMode::SectorBp;
  VarId base = 0;
  std::vector<BitMatrix> generators;
  std::vector<std::vector<int>> orbits;
  std::vector<SectorRun> sectors;
  std::vector<std::vector<double>> marginals;  // sum_l w_l p_l
  std::size_t off_tree_edges = 0;
};

/// Conditions on each orbit of the base fiber, runs inference per sector
/// and recombines by normalized evidence. Sum-product, pairwise models only.
SectorResult sector_infer(const FactorGraph& graph, const SectorOptions& options = {});

}  // namespace hatcc
