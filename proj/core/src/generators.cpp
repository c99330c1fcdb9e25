#include "hatcc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hatcc {

namespace {

enum Stream : std::uint64_t { kTopology = 1, kTruth = 2, kCorruption = 3, kPotentials = 4, kFields = 5 };

std::vector<int> random_permutation(int d, Rng& rng) {
  std::vector<int> p(static_cast<std::size_t>(d));
  std::iota(p.begin(), p.end(), 0);
  for (int i = d - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(rng.uniform_int(i + 1))]);
  return p;
}

void check_topology(const Topology& t) {
  switch (t.kind) {
    case TopologyKind::Cycle:
      if (t.n < 3) throw std::invalid_argument("cycle topology needs n >= 3");
      break;
    case TopologyKind::Grid:
      if (t.rows < 1 || t.cols < 1) throw std::invalid_argument("grid topology needs positive rows and cols");
      break;
    case TopologyKind::Random:
      if (t.n < 1) throw std::invalid_argument("random topology needs n >= 1");
      if (!(t.p >= 0.0 && t.p <= 1.0)) throw std::invalid_argument("random topology needs p in [0, 1]");
      break;
  }
}

}  // namespace

std::string Topology::name() const {
  switch (kind) {
    case TopologyKind::Cycle: return "cycle";
    case TopologyKind::Grid: return "grid";
    case TopologyKind::Random: return "random";
  }
  return "cycle";
}

std::vector<std::pair<int, int>> topology_edges(const Topology& t, Rng& rng) {
  check_topology(t);
  std::set<std::pair<int, int>> edges;
  switch (t.kind) {
    case TopologyKind::Cycle:
      for (int i = 0; i + 1 < t.n; ++i) edges.emplace(i, i + 1);
      edges.emplace(0, t.n - 1);
      break;
    case TopologyKind::Grid:
      for (int r = 0; r < t.rows; ++r) {
        for (int c = 0; c < t.cols; ++c) {
          const int v = r * t.cols + c;
          if (c + 1 < t.cols) edges.emplace(v, v + 1);
          if (r + 1 < t.rows) edges.emplace(v, v + t.cols);
        }
      }
      break;
    case TopologyKind::Random:
      for (int v = 1; v < t.n; ++v) edges.emplace(rng.uniform_int(v), v);
      for (int i = 0; i < t.n; ++i) {
        for (int j = i + 1; j < t.n; ++j) {
          const bool draw = rng.bernoulli(t.p);  // drawn for every pair to keep streams aligned
          if (draw) edges.emplace(i, j);
        }
      }
      break;
  }
  return {edges.begin(), edges.end()};
}

std::vector<int> off_tree_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[static_cast<std::size_t>(edges[e].first)].emplace_back(edges[e].second, static_cast<int>(e));
    adj[static_cast<std::size_t>(edges[e].second)].emplace_back(edges[e].first, static_cast<int>(e));
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<bool> tree(edges.size(), false);
  for (int s = 0; s < n; ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    seen[static_cast<std::size_t>(s)] = true;
    std::vector<int> queue{s};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (auto [y, e] : adj[static_cast<std::size_t>(queue[head])]) {
        if (seen[static_cast<std::size_t>(y)]) continue;
        seen[static_cast<std::size_t>(y)] = true;
        tree[static_cast<std::size_t>(e)] = true;
        queue.push_back(y);
      }
    }
  }
  std::vector<int> off;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!tree[e]) off.push_back(static_cast<int>(e));
  }
  return off;
}

ZkInstance gen_zk_sync(const Topology& topology, int k, double eta, double epsilon, std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0, 1)");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1]");
  const Rng root(seed);
  Rng topo_rng = root.split(kTopology);
  Rng truth_rng = root.split(kTruth);
  Rng corrupt_rng = root.split(kCorruption);

  ZkInstance inst;
  inst.k = k;
  inst.eta = eta;
  inst.epsilon = epsilon;
  inst.seed = seed;
  inst.edges = topology_edges(topology, topo_rng);
  const int n = topology.vertex_count();
  for (int v = 0; v < n; ++v) inst.truth.push_back(truth_rng.uniform_int(k));
  for (auto [i, j] : inst.edges) {
    inst.shifts.push_back(((inst.truth[static_cast<std::size_t>(j)] - inst.truth[static_cast<std::size_t>(i)]) % k + k) % k);
  }

  std::vector<int> off = off_tree_edges(n, inst.edges);
  const auto target = static_cast<std::size_t>(std::ceil(epsilon * static_cast<double>(off.size()) - 1e-9));
  // partial Fisher-Yates: the first `target` entries are a uniform subset
  for (std::size_t i = 0; i < target; ++i) {
    const auto r = i + corrupt_rng.uniform_int(static_cast<std::uint64_t>(off.size() - i));
    std::swap(off[i], off[r]);
    const int delta = 1 + corrupt_rng.uniform_int(k - 1);
    auto& g = inst.shifts[static_cast<std::size_t>(off[i])];
    g = (g + delta) % k;
    inst.corrupted.push_back(off[i]);
  }
  std::sort(inst.corrupted.begin(), inst.corrupted.end());

  inst.graph.semiring = Semiring::sum_product();
  inst.graph.variables = make_variables(std::vector<int>(static_cast<std::size_t>(n), k));
  const double base = eta / k;
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    auto [i, j] = inst.edges[e];
    FactorDecl f{static_cast<FactorId>(e), {i, j}, std::vector<double>(static_cast<std::size_t>(k * k), base)};
    for (int xi = 0; xi < k; ++xi) {
      const int xj = (xi + inst.shifts[e]) % k;
      f.table[static_cast<std::size_t>(xi * k + xj)] += 1.0 - eta;
    }
    inst.graph.factors.push_back(std::move(f));
  }
  return inst;
}

PermutationInstance gen_permutation_graph(const Topology& topology, int d, double noise, std::uint64_t seed,
                                          const PermutationOptions& options) {
  if (d < 2) throw std::invalid_argument("domain size must be at least 2");
  if (!(noise >= 0.0 && noise <= 1.0)) throw std::invalid_argument("noise must lie in [0, 1]");
  const Rng root(seed);
  Rng topo_rng = root.split(kTopology);
  Rng perm_rng = root.split(kPotentials);
  Rng field_rng = root.split(kFields);

  PermutationInstance inst;
  inst.edges = topology_edges(topology, topo_rng);
  const int n = topology.vertex_count();
  std::vector<std::vector<int>> vertex_perm;
  if (options.consistent) {
    for (int v = 0; v < n; ++v) vertex_perm.push_back(random_permutation(d, perm_rng));
  }
  inst.graph.semiring = Semiring::sum_product();
  inst.graph.variables = make_variables(std::vector<int>(static_cast<std::size_t>(n), d));
  for (std::size_t e = 0; e < inst.edges.size(); ++e) {
    auto [i, j] = inst.edges[e];
    std::vector<int> phi(static_cast<std::size_t>(d));
    if (options.consistent) {
      const auto& pi = vertex_perm[static_cast<std::size_t>(i)];
      const auto& pj = vertex_perm[static_cast<std::size_t>(j)];
      // phi(x) = pj(pi^-1(x))
      for (int y = 0; y < d; ++y) phi[static_cast<std::size_t>(pi[static_cast<std::size_t>(y)])] = pj[static_cast<std::size_t>(y)];
    } else {
      phi = random_permutation(d, perm_rng);
    }
    FactorDecl f{static_cast<FactorId>(e), {i, j}, std::vector<double>(static_cast<std::size_t>(d * d), noise / d)};
    for (int x = 0; x < d; ++x) f.table[static_cast<std::size_t>(x * d + phi[static_cast<std::size_t>(x)])] += 1.0 - noise;
    inst.graph.factors.push_back(std::move(f));
    inst.permutations.push_back(std::move(phi));
  }
  if (options.field_strength != 0.0) {
    for (int v = 0; v < n; ++v) {
      FactorDecl f{static_cast<FactorId>(inst.graph.factors.size()), {v}, {}};
      for (int x = 0; x < d; ++x) f.table.push_back(std::exp(options.field_strength * (2.0 * field_rng.uniform01() - 1.0)));
      inst.graph.factors.push_back(std::move(f));
    }
  }
  return inst;
}

FactorGraph gen_grid_mrf(int rows, int cols, double coupling, double field_strength, std::uint64_t seed) {
  if (!(coupling > 0.0)) throw std::invalid_argument("coupling must be positive");
  Rng topo_rng = Rng(seed).split(kTopology);
  Rng field_rng = Rng(seed).split(kFields);
  const auto edges = topology_edges(Topology::grid(rows, cols), topo_rng);
  FactorGraph g;
  g.semiring = Semiring::sum_product();
  g.variables = make_variables(std::vector<int>(static_cast<std::size_t>(rows * cols), 2));
  for (auto [i, j] : edges) {
    g.factors.push_back({static_cast<FactorId>(g.factors.size()), {i, j}, {coupling, 1.0, 1.0, coupling}});
  }
  if (field_strength != 0.0) {
    for (int v = 0; v < rows * cols; ++v) {
      const double h = field_strength * (2.0 * field_rng.uniform01() - 1.0);
      g.factors.push_back({static_cast<FactorId>(g.factors.size()), {v}, {std::exp(h), std::exp(-h)}});
    }
  }
  return g;
}

FactorGraph gen_four_cycle(Parity parity) {
  const std::vector<double> copy{1, 0, 0, 1};
  const std::vector<double> negate{0, 1, 1, 0};
  FactorGraph g;
  g.semiring = Semiring::sum_product();
  g.variables = {{0, 2, "A"}, {1, 2, "B"}, {2, 2, "C"}, {3, 2, "D"}};
  g.factors = {{0, {0, 1}, copy},
               {1, {1, 2}, copy},
               {2, {2, 3}, parity == Parity::Odd ? negate : copy},
               {3, {3, 0}, copy}};
  return g;
}

FactorGraph gen_random_tree(int num_vars, std::uint64_t seed, int cardinality) {
  if (num_vars < 1) throw std::invalid_argument("a tree needs at least one variable");
  if (cardinality < 1) throw std::invalid_argument("cardinality must be positive");
  Rng rng = Rng(seed).split(kTopology);
  Rng pot = Rng(seed).split(kPotentials);
  FactorGraph g;
  g.semiring = Semiring::sum_product();
  g.variables = make_variables(std::vector<int>(static_cast<std::size_t>(num_vars), cardinality));

  std::vector<int> uses(static_cast<std::size_t>(num_vars), 0);
  int next_var = 0;
  std::vector<std::vector<VarId>> scopes;
  auto fresh = [&](int count, std::vector<VarId>& scope) {
    for (int i = 0; i < count && next_var < num_vars; ++i) scope.push_back(next_var++);
  };
  {
    std::vector<VarId> scope;
    fresh(1 + rng.uniform_int(3), scope);
    scopes.push_back(scope);
  }
  for (VarId v : scopes.back()) ++uses[static_cast<std::size_t>(v)];
  while (next_var < num_vars) {
    std::vector<VarId> open;
    for (int v = 0; v < next_var; ++v) {
      if (uses[static_cast<std::size_t>(v)] < 2) open.push_back(v);
    }
    std::vector<VarId> scope;
    if (open.empty()) {
      fresh(1 + rng.uniform_int(3), scope);  // new component
    } else {
      scope.push_back(open[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(open.size())))]);
      fresh(1 + rng.uniform_int(2), scope);
    }
    for (VarId v : scope) ++uses[static_cast<std::size_t>(v)];
    scopes.push_back(std::move(scope));
  }
  // a few unary factors on variables that still have room
  for (int v = 0; v < num_vars; ++v) {
    if (uses[static_cast<std::size_t>(v)] < 2 && rng.bernoulli(0.3)) {
      scopes.push_back({v});
      ++uses[static_cast<std::size_t>(v)];
    }
  }
  for (auto& scope : scopes) {
    // shuffle declared order so addressing is exercised beyond ascending scopes
    for (std::size_t i = scope.size(); i > 1; --i) std::swap(scope[i - 1], scope[rng.uniform_int(static_cast<std::uint64_t>(i))]);
    std::size_t size = 1;
    for (std::size_t i = 0; i < scope.size(); ++i) size *= static_cast<std::size_t>(cardinality);
    FactorDecl f{static_cast<FactorId>(g.factors.size()), scope, std::vector<double>(size)};
    for (double& x : f.table) x = 0.1 + 1.9 * pot.uniform01();
    g.factors.push_back(std::move(f));
  }
  return g;
}

FactorGraph gen_chain(int n, bool closed, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("a chain needs at least two variables");
  Rng pot = Rng(seed).split(kPotentials);
  FactorGraph g;
  g.semiring = Semiring::sum_product();
  g.variables = make_variables(std::vector<int>(static_cast<std::size_t>(n), 2));
  auto add = [&](VarId a, VarId b) {
    FactorDecl f{static_cast<FactorId>(g.factors.size()), {a, b}, std::vector<double>(4)};
    for (double& x : f.table) x = 0.1 + 1.9 * pot.uniform01();
    g.factors.push_back(std::move(f));
  };
  for (int i = 0; i + 1 < n; ++i) add(i, i + 1);
  if (closed && n > 2) add(n - 1, 0);
  return g;
}

}  // namespace hatcc
