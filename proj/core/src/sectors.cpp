#include "hatcc/sectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hatcc/holonomy.hpp"

namespace hatcc {

namespace {

void require_pairwise(const FactorGraph& graph) {
  for (const auto& f : graph.factors) {
    if (f.scope.size() > 2) {
      throw std::invalid_argument("sector decomposition needs a pairwise model; factor " + std::to_string(f.id) +
                                  " has arity " + std::to_string(f.scope.size()));
    }
  }
}

BitMatrix single_kernel(const FactorGraph& graph, FactorId f, VarId from, VarId to, double tol) {
  const VarId src[] = {from};
  const VarId dst[] = {to};
  return transport_kernel(graph, f, src, dst, tol).matrix;
}

// Transport from v up the tree to the base: product of kernels child->parent.
BitMatrix to_base(const FactorGraph& graph, const PairwiseForest& forest, VarId v, double tol) {
  const auto n = static_cast<std::size_t>(graph.cardinality(v));
  BitMatrix acc = BitMatrix::identity(n);
  while (forest.parent[static_cast<std::size_t>(v)] >= 0) {
    const VarId p = forest.parent[static_cast<std::size_t>(v)];
    acc = acc * single_kernel(graph, forest.parent_factor[static_cast<std::size_t>(v)], v, p, tol);
    v = p;
  }
  return acc;
}

// Transport from the base down the tree to v.
BitMatrix from_base(const FactorGraph& graph, const PairwiseForest& forest, VarId v, double tol) {
  std::vector<VarId> path{v};
  while (forest.parent[static_cast<std::size_t>(path.back())] >= 0) {
    path.push_back(forest.parent[static_cast<std::size_t>(path.back())]);
  }
  BitMatrix acc = BitMatrix::identity(static_cast<std::size_t>(graph.cardinality(path.back())));
  for (std::size_t i = path.size() - 1; i > 0; --i) {
    const VarId parent = path[i];
    const VarId child = path[i - 1];
    acc = acc * single_kernel(graph, forest.parent_factor[static_cast<std::size_t>(child)], parent, child, tol);
  }
  return acc;
}

double log_sum_exp(const std::vector<double>& xs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : xs) hi = std::max(hi, x);
  if (std::isinf(hi)) return hi;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - hi);
  return hi + std::log(s);
}

}  // namespace

VarId default_base_vertex(const FactorGraph& graph) {
  std::vector<int> degree(graph.num_variables(), 0);
  for (const auto& f : graph.factors) {
    if (f.scope.size() == 2) {
      ++degree[static_cast<std::size_t>(f.scope[0])];
      ++degree[static_cast<std::size_t>(f.scope[1])];
    }
  }
  VarId best = 0;
  for (std::size_t v = 1; v < degree.size(); ++v) {
    if (degree[v] > degree[static_cast<std::size_t>(best)]) best = static_cast<VarId>(v);
  }
  return best;
}

PairwiseForest pairwise_forest(const FactorGraph& graph, VarId base) {
  require_pairwise(graph);
  const auto n = graph.num_variables();
  if (base < 0 || static_cast<std::size_t>(base) >= n) {
    throw std::invalid_argument("base vertex " + std::to_string(base) + " is not a declared variable");
  }
  std::vector<std::vector<std::pair<VarId, FactorId>>> adj(n);
  PairwiseForest forest;
  forest.base = base;
  for (const auto& f : graph.factors) {
    if (f.scope.size() == 1) {
      forest.unary_factors.push_back(f.id);
      continue;
    }
    adj[static_cast<std::size_t>(f.scope[0])].emplace_back(f.scope[1], f.id);
    adj[static_cast<std::size_t>(f.scope[1])].emplace_back(f.scope[0], f.id);
  }
  forest.parent.assign(n, -1);
  forest.parent_factor.assign(n, -1);
  forest.depth.assign(n, 0);
  forest.component.assign(n, -1);
  std::vector<bool> is_tree(graph.num_factors(), false);
  std::vector<VarId> starts{base};
  for (std::size_t v = 0; v < n; ++v) starts.push_back(static_cast<VarId>(v));
  int comp = 0;
  for (VarId s : starts) {
    if (forest.component[static_cast<std::size_t>(s)] >= 0) continue;
    forest.component[static_cast<std::size_t>(s)] = comp;
    std::vector<VarId> queue{s};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const VarId x = queue[head];
      for (auto [y, f] : adj[static_cast<std::size_t>(x)]) {
        if (forest.component[static_cast<std::size_t>(y)] >= 0) continue;
        forest.component[static_cast<std::size_t>(y)] = comp;
        forest.parent[static_cast<std::size_t>(y)] = x;
        forest.parent_factor[static_cast<std::size_t>(y)] = f;
        forest.depth[static_cast<std::size_t>(y)] = forest.depth[static_cast<std::size_t>(x)] + 1;
        is_tree[static_cast<std::size_t>(f)] = true;
        queue.push_back(y);
      }
    }
    ++comp;
  }
  for (const auto& f : graph.factors) {
    if (f.scope.size() != 2) continue;
    (is_tree[static_cast<std::size_t>(f.id)] ? forest.tree_factors : forest.off_tree_factors).push_back(f.id);
  }
  return forest;
}

std::vector<BitMatrix> base_generators(const FactorGraph& graph, const PairwiseForest& forest,
                                       double support_tolerance) {
  std::vector<BitMatrix> gens;
  const int base_comp = forest.component[static_cast<std::size_t>(forest.base)];
  for (FactorId f : forest.off_tree_factors) {
    const auto& scope = graph.factors[static_cast<std::size_t>(f)].scope;
    const VarId i = scope[0];
    const VarId j = scope[1];
    if (forest.component[static_cast<std::size_t>(i)] != base_comp) continue;
    gens.push_back(from_base(graph, forest, i, support_tolerance) *
                   single_kernel(graph, f, i, j, support_tolerance) *
                   to_base(graph, forest, j, support_tolerance));
  }
  return gens;
}

std::vector<BitMatrix> base_generators(const FactorGraph& graph, VarId base, double support_tolerance) {
  return base_generators(graph, pairwise_forest(graph, base), support_tolerance);
}

std::vector<std::vector<int>> orbit_partition(const std::vector<BitMatrix>& generators, std::size_t fiber_size,
                                              bool strict_group) {
  BitMatrix joined(fiber_size, fiber_size);
  for (const auto& g : generators) {
    if (g.rows() != fiber_size || g.cols() != fiber_size) {
      throw std::invalid_argument("generator shape does not match the fiber");
    }
    if (strict_group && !g.is_permutation()) {
      throw std::invalid_argument("strict group mode needs permutation generators");
    }
    joined |= g;
  }
  return strongly_connected_components(joined);
}

SectorResult sector_infer(const FactorGraph& graph, const SectorOptions& options) {
  require_valid(graph);
  if (graph.semiring.kind() != SemiringKind::SumProduct) {
    throw std::invalid_argument("sector inference needs the sum_product semiring");
  }
  SectorResult res;
  res.mode = options.mode;
  res.base = options.base.value_or(default_base_vertex(graph));
  const auto forest = pairwise_forest(graph, res.base);
  res.off_tree_edges = forest.off_tree_factors.size();
  res.generators = base_generators(graph, forest, options.support_tolerance);
  const auto fiber = static_cast<std::size_t>(graph.cardinality(res.base));
  res.orbits = orbit_partition(res.generators, fiber, options.strict_group);

  // the conditioned model: original (or tree-only) factors plus a clamp on b
  FactorGraph work;
  work.semiring = graph.semiring;
  work.variables = graph.variables;
  for (const auto& f : graph.factors) {
    const bool off_tree = std::binary_search(forest.off_tree_factors.begin(), forest.off_tree_factors.end(), f.id);
    if (options.mode == SectorMode::DecompositionOnly && off_tree) continue;
    FactorDecl copy = f;
    copy.id = static_cast<FactorId>(work.factors.size());
    work.factors.push_back(std::move(copy));
  }
  const auto clamp_id = static_cast<FactorId>(work.factors.size());
  work.factors.push_back({clamp_id, {res.base}, std::vector<double>(fiber, 0.0)});

  std::vector<double> log_z;
  for (const auto& orbit : res.orbits) {
    auto& clamp = work.factors.back().table;
    std::fill(clamp.begin(), clamp.end(), 0.0);
    for (int s : orbit) clamp[static_cast<std::size_t>(s)] = 1.0;

    SectorRun run;
    run.orbit = orbit;
    BpEngine engine(work);
    if (options.mode == SectorMode::DecompositionOnly) {
      auto tp = engine.two_pass();
      run.log_evidence = tp.log_z;
      run.marginals = std::move(tp.beliefs.marginals);
    } else {
      auto bp = engine.run(options.bp);
      run.converged = bp.converged;
      run.iterations = bp.iterations;
      run.final_residual = bp.residual_trace.empty() ? 0.0 : bp.residual_trace.back();
      run.log_evidence = bp.beliefs.any_degenerate() ? -std::numeric_limits<double>::infinity()
                                                     : engine.bethe_log_z(bp.messages);
      run.marginals = std::move(bp.beliefs.marginals);
    }
    if (std::isnan(run.log_evidence)) run.log_evidence = -std::numeric_limits<double>::infinity();
    log_z.push_back(run.log_evidence);
    res.sectors.push_back(std::move(run));
  }

  const double total = log_sum_exp(log_z);
  if (std::isinf(total) && total < 0) {
    res.unsat = true;
    return res;
  }
  res.marginals.assign(graph.num_variables(), {});
  for (std::size_t v = 0; v < graph.num_variables(); ++v) {
    res.marginals[v].assign(static_cast<std::size_t>(graph.variables[v].cardinality), 0.0);
  }
  for (auto& run : res.sectors) {
    run.weight = std::exp(run.log_evidence - total);
    if (run.weight == 0.0) continue;
    for (std::size_t v = 0; v < graph.num_variables(); ++v) {
      for (std::size_t x = 0; x < res.marginals[v].size(); ++x) {
        res.marginals[v][x] += run.weight * run.marginals[v][x];
      }
    }
  }
  return res;
}

}  // namespace hatcc
