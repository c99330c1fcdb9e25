#include "hatcc/compile.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hatcc {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<State> decode(std::size_t index, const std::vector<int>& cards) {
  std::vector<State> digits(cards.size(), 0);
  for (std::size_t i = cards.size(); i-- > 0;) {
    digits[i] = static_cast<State>(index % static_cast<std::size_t>(cards[i]));
    index /= static_cast<std::size_t>(cards[i]);
  }
  return digits;
}

bool has_off_diagonal(const BitMatrix& h) {
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t c = 0; c < h.cols(); ++c) {
      if (r != c && h.get(r, c)) return true;
    }
  }
  return false;
}

bool contains(const std::vector<VarId>& scope, VarId v) {
  return std::find(scope.begin(), scope.end(), v) != scope.end();
}

// Evidence accumulator shared by the propagation routines.
class Evidence {
 public:
  explicit Evidence(Semiring sr) : sr_(sr) {}

  void absorb(double scale) {
    if (sr_.is_zero(scale)) {
      dead_ = true;
    } else if (sr_.kind() == SemiringKind::MinSum) {
      acc_ += scale;
    } else if (sr_.kind() != SemiringKind::Boolean) {
      acc_ += std::log(scale);
    }
  }

  bool dead() const { return dead_; }

  void finish(double& z, double& log_z) const {
    switch (sr_.kind()) {
      case SemiringKind::SumProduct:
      case SemiringKind::MaxProduct:
        log_z = dead_ ? -std::numeric_limits<double>::infinity() : acc_;
        z = dead_ ? 0.0 : std::exp(acc_);
        break;
      case SemiringKind::MinSum:
        z = dead_ ? sr_.zero() : acc_;
        log_z = -z;
        break;
      case SemiringKind::Boolean:
        z = dead_ ? 0.0 : 1.0;
        log_z = z;
        break;
    }
  }

 private:
  Semiring sr_;
  double acc_ = 0.0;
  bool dead_ = false;
};

PotentialSlice ones_over(const std::vector<VarId>& scope, const std::vector<int>& cards, double one) {
  std::size_t n = 1;
  for (int c : cards) n *= static_cast<std::size_t>(c);
  return PotentialSlice{scope, cards, std::vector<double>(n, one)};
}

}  // namespace

FactorDecl build_selector(const FactorGraph& graph, const HolonomyReport& report, VarId mode_var, FactorId id) {
  const Semiring sr = graph.semiring;
  const auto& q = report.quotient;
  const std::size_t modes = q.num_modes();
  FactorDecl sel;
  sel.id = id;
  sel.scope = report.interface;
  sel.scope.push_back(mode_var);
  sel.table.assign(q.mode_of.size() * modes, sr.zero());
  for (std::size_t x = 0; x < q.mode_of.size(); ++x) {
    if (!q.fixed_point_mask[x]) continue;
    sel.table[x * modes + static_cast<std::size_t>(q.mode_of[x])] = sr.one();
  }
  return sel;
}

bool selector_is_unsat(const FactorDecl& selector, Semiring semiring) {
  return std::all_of(selector.table.begin(), selector.table.end(),
                     [&](double v) { return semiring.is_zero(v); });
}

AugmentResult augment(const FactorGraph& graph, const FactorNerve& nerve, const Backbone& backbone,
                      const std::vector<HolonomyReport>& reports) {
  AugmentResult out;
  CompiledModel model;
  model.graph = graph;
  model.original_var_count = graph.num_variables();
  model.original_factor_count = graph.num_factors();
  model.roots = backbone.roots;
  for (int e : backbone.tree_edges) {
    const auto& edge = nerve.edges[static_cast<std::size_t>(e)];
    model.tree_edges.push_back({edge.u, edge.v, edge.interface});
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const auto mode_var = static_cast<VarId>(graph.num_variables() + i);
    const auto sel_id = static_cast<FactorId>(graph.num_factors() + i);
    FactorDecl sel = build_selector(graph, r, mode_var, sel_id);
    if (selector_is_unsat(sel, graph.semiring)) {
      out.unsat = UnsatCertificate{r.chord, r.u, r.v, r.interface, std::move(sel),
                                   "selector of chord (" + std::to_string(r.u) + ", " + std::to_string(r.v) +
                                       ") has empty support: no interface state is a holonomy fixed point"};
      return out;
    }
    model.graph.variables.push_back(
        {mode_var, static_cast<int>(r.quotient.num_modes()), "mode_" + std::to_string(r.chord)});
    model.graph.factors.push_back(std::move(sel));
    const FactorId anchor = r.cycle.factors.front();
    model.chords.push_back({r.chord, mode_var, sel_id, anchor});
    model.tree_edges.push_back({anchor, sel_id, r.interface});
  }
  if (!cluster_tree_is_forest(model)) {
    throw std::logic_error("augmented cluster graph is not a forest");
  }
  out.model = std::move(model);
  return out;
}

bool cluster_tree_is_forest(const CompiledModel& model) {
  const auto n = model.graph.num_factors();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  std::size_t components = n;
  for (const auto& e : model.tree_edges) {
    const int a = find(e.a);
    const int b = find(e.b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    --components;
  }
  return model.tree_edges.size() == n - components;
}

namespace {

struct ClusterTree {
  std::vector<std::vector<std::pair<FactorId, int>>> adj;  // (neighbor, edge)
  std::vector<std::vector<FactorId>> orders;              // BFS order per component
  std::vector<FactorId> parent;
  std::vector<int> parent_edge;
  std::vector<std::vector<FactorId>> children;
};

ClusterTree rooted_tree(const CompiledModel& model) {
  const auto n = model.graph.num_factors();
  ClusterTree t;
  t.adj.assign(n, {});
  for (std::size_t e = 0; e < model.tree_edges.size(); ++e) {
    const auto& edge = model.tree_edges[e];
    t.adj[static_cast<std::size_t>(edge.a)].emplace_back(edge.b, static_cast<int>(e));
    t.adj[static_cast<std::size_t>(edge.b)].emplace_back(edge.a, static_cast<int>(e));
  }
  for (auto& a : t.adj) std::sort(a.begin(), a.end());
  t.parent.assign(n, -1);
  t.parent_edge.assign(n, -1);
  t.children.assign(n, {});
  std::vector<bool> seen(n, false);
  std::vector<FactorId> roots = model.roots;
  for (std::size_t f = 0; f < n; ++f) roots.push_back(static_cast<FactorId>(f));
  for (FactorId root : roots) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    seen[static_cast<std::size_t>(root)] = true;
    std::vector<FactorId> order{root};
    for (std::size_t head = 0; head < order.size(); ++head) {
      const FactorId x = order[head];
      for (auto [y, e] : t.adj[static_cast<std::size_t>(x)]) {
        if (seen[static_cast<std::size_t>(y)]) continue;
        seen[static_cast<std::size_t>(y)] = true;
        t.parent[static_cast<std::size_t>(y)] = x;
        t.parent_edge[static_cast<std::size_t>(y)] = e;
        t.children[static_cast<std::size_t>(x)].push_back(y);
        order.push_back(y);
      }
    }
    t.orders.push_back(std::move(order));
  }
  return t;
}

// Clusters holding v that are reachable from `start` through clusters
// that also hold v.
std::vector<bool> copy_reach(const CompiledModel& model, const ClusterTree& t, VarId v, FactorId start) {
  std::vector<bool> seen(model.graph.num_factors(), false);
  std::vector<FactorId> stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!stack.empty()) {
    const FactorId x = stack.back();
    stack.pop_back();
    for (auto [y, e] : t.adj[static_cast<std::size_t>(x)]) {
      if (seen[static_cast<std::size_t>(y)] || !contains(model.graph.factors[static_cast<std::size_t>(y)].scope, v)) continue;
      seen[static_cast<std::size_t>(y)] = true;
      stack.push_back(y);
    }
  }
  return seen;
}

}  // namespace

CoverDiagnostics check_running_intersection(const CompiledModel& model,
                                            const std::vector<HolonomyReport>& reports) {
  CoverDiagnostics d;
  const auto t = rooted_tree(model);
  const auto holders = model.graph.variable_neighbors();
  for (std::size_t v = 0; v < model.original_var_count; ++v) {
    const auto& hs = holders[v];
    if (hs.size() < 2) continue;
    const auto reach = copy_reach(model, t, static_cast<VarId>(v), hs.front());
    const bool split = std::any_of(hs.begin(), hs.end(), [&](FactorId f) { return !reach[static_cast<std::size_t>(f)]; });
    if (split) d.split_variables.push_back(static_cast<VarId>(v));
  }
  d.running_intersection = d.split_variables.empty();
  if (d.running_intersection) return d;

  for (const auto& r : reports) {
    bool splits = false;
    for (VarId w : r.interface) {
      if (!copy_reach(model, t, w, r.u)[static_cast<std::size_t>(r.v)]) {
        splits = true;
        break;
      }
    }
    if (splits && has_off_diagonal(r.matrix)) {
      d.exactness_certified = false;
      d.warnings.push_back("chord (" + std::to_string(r.u) + ", " + std::to_string(r.v) +
                           ") joins disconnected copies of its interface and its holonomy mixes states; "
                           "marginals are not guaranteed exact");
    }
  }
  return d;
}

ClusterBeliefs cluster_tree_propagate(const CompiledModel& model) {
  const FactorGraph& g = model.graph;
  const Semiring sr = g.semiring;
  const auto n = g.num_factors();
  const auto t = rooted_tree(model);

  std::vector<PotentialSlice> clusters;
  clusters.reserve(n);
  for (std::size_t f = 0; f < n; ++f) clusters.push_back(canonicalize(factor_slice(g, static_cast<FactorId>(f))));

  auto separator = [&](FactorId child) -> const std::vector<VarId>& {
    return model.tree_edges[static_cast<std::size_t>(t.parent_edge[static_cast<std::size_t>(child)])].separator;
  };

  Evidence evidence(sr);
  std::vector<PotentialSlice> up(n);
  std::vector<PotentialSlice> down(n);
  std::vector<PotentialSlice> partial = clusters;  // cluster times messages from children

  for (const auto& order : t.orders) {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto c = static_cast<std::size_t>(*it);
      for (FactorId ch : t.children[c]) multiply_in(partial[c], up[static_cast<std::size_t>(ch)], sr);
      if (t.parent[c] < 0) {
        evidence.absorb(semiring_total(partial[c].table, sr));
        continue;
      }
      up[c] = restrict_to(partial[c], separator(*it), sr);
      if (sr.kind() != SemiringKind::Boolean) evidence.absorb(normalize_in_place(up[c].table, sr));
    }
  }
  // variables that no factor touches still contribute to the evidence
  const auto holders = g.variable_neighbors();
  for (std::size_t v = 0; v < g.num_variables(); ++v) {
    if (!holders[v].empty()) continue;
    std::vector<double> ones(static_cast<std::size_t>(g.variables[v].cardinality), sr.one());
    evidence.absorb(semiring_total(ones, sr));
  }

  for (const auto& order : t.orders) {
    for (FactorId p : order) {
      const auto pc = static_cast<std::size_t>(p);
      for (FactorId ch : t.children[pc]) {
        PotentialSlice work = clusters[pc];
        if (t.parent[pc] >= 0) multiply_in(work, down[pc], sr);
        for (FactorId other : t.children[pc]) {
          if (other != ch) multiply_in(work, up[static_cast<std::size_t>(other)], sr);
        }
        auto& msg = down[static_cast<std::size_t>(ch)];
        msg = restrict_to(work, separator(ch), sr);
        if (sr.kind() != SemiringKind::Boolean) normalize_in_place(msg.table, sr);
      }
    }
  }

  ClusterBeliefs out;
  out.beliefs = std::move(partial);
  for (std::size_t c = 0; c < n; ++c) {
    if (t.parent[c] >= 0) multiply_in(out.beliefs[c], down[c], sr);
    if (sr.kind() != SemiringKind::Boolean) normalize_in_place(out.beliefs[c].table, sr);
  }
  evidence.finish(out.z, out.log_z);
  out.zero_evidence = evidence.dead();
  return out;
}

std::vector<std::vector<double>> marginalize_modes(const CompiledModel& model, const ClusterBeliefs& beliefs) {
  const Semiring sr = model.graph.semiring;
  std::vector<std::vector<double>> out(model.original_var_count);
  std::vector<int> first_cluster(model.original_var_count, -1);
  for (std::size_t c = 0; c < beliefs.beliefs.size(); ++c) {
    for (VarId v : beliefs.beliefs[c].scope) {
      if (static_cast<std::size_t>(v) < model.original_var_count && first_cluster[static_cast<std::size_t>(v)] < 0) {
        first_cluster[static_cast<std::size_t>(v)] = static_cast<int>(c);
      }
    }
  }
  for (std::size_t v = 0; v < model.original_var_count; ++v) {
    std::vector<double> m;
    if (first_cluster[v] < 0) {
      m.assign(static_cast<std::size_t>(model.graph.variables[v].cardinality), sr.one());
    } else {
      const VarId target[] = {static_cast<VarId>(v)};
      m = restrict_to(beliefs.beliefs[static_cast<std::size_t>(first_cluster[v])], target, sr).table;
    }
    if (sr.kind() != SemiringKind::Boolean) normalize_in_place(m, sr);
    out[v] = std::move(m);
  }
  return out;
}

namespace {

AugmentResult compile_phases(const FactorGraph& graph, const HatccOptions& options, PhaseTimings& timings,
                             FactorNerve& nerve, Backbone& bb, std::vector<HolonomyReport>& reports) {
  auto t0 = Clock::now();
  nerve = build_factor_nerve(graph);
  timings.nerve_ms = ms_since(t0);

  t0 = Clock::now();
  bb = backbone(nerve, options.backbone);
  timings.backbone_ms = ms_since(t0);

  t0 = Clock::now();
  reports.clear();
  reports.reserve(bb.chords.size());
  for (int c : bb.chords) {
    HolonomyReport r;
    const auto& edge = nerve.edges[static_cast<std::size_t>(c)];
    r.chord = c;
    r.u = edge.u;
    r.v = edge.v;
    r.interface = edge.interface;
    r.cycle = fundamental_cycle(nerve, bb, c);
    r.matrix = holonomy_matrix(graph, r.cycle, options.holonomy);
    reports.push_back(std::move(r));
  }
  timings.holonomy_ms = ms_since(t0);

  t0 = Clock::now();
  for (auto& r : reports) {
    r.quotient = mode_quotient(r.matrix);
    r.trivial = is_trivial(r.matrix);
  }
  timings.modes_ms = ms_since(t0);

  t0 = Clock::now();
  auto result = augment(graph, nerve, bb, reports);
  timings.augment_ms = ms_since(t0);
  return result;
}

}  // namespace

AugmentResult hatcc_compile(const FactorGraph& graph, const HatccOptions& options, PhaseTimings* timings) {
  PhaseTimings local;
  FactorNerve nerve;
  Backbone bb;
  std::vector<HolonomyReport> reports;
  auto result = compile_phases(graph, options, timings ? *timings : local, nerve, bb, reports);
  return result;
}

HatccResult hatcc_infer(const FactorGraph& graph, const HatccOptions& options) {
  require_valid(graph);
  const Semiring sr = graph.semiring;
  HatccResult res;
  auto compiled = compile_phases(graph, options, res.timings, res.nerve, res.backbone, res.reports);

  auto mark_unsat = [&](UnsatCertificate cert) {
    res.status = HatccStatus::Unsat;
    res.unsat = std::move(cert);
    res.z = sr.zero();
    res.log_z = sr.kind() == SemiringKind::MinSum ? -sr.zero()
                : sr.kind() == SemiringKind::Boolean ? 0.0
                                                     : -std::numeric_limits<double>::infinity();
    res.marginals.clear();
  };

  if (compiled.unsat) {
    mark_unsat(std::move(*compiled.unsat));
    return res;
  }
  const CompiledModel& model = *compiled.model;
  res.augmented_vars = model.graph.num_variables();
  res.augmented_factors = model.graph.num_factors();
  res.augmented_tree_edges = model.tree_edges.size();

  const UnsatCertificate zero_evidence{-1, -1, -1, {}, {}, "evidence vanishes: no assignment has nonzero weight"};

  if (res.backbone.chords.empty() && !options.force_cluster_tree) {
    BpEngine engine(graph);
    if (engine.is_forest()) {
      res.tree_fast_path = true;
      auto t0 = Clock::now();
      auto tp = engine.two_pass();
      res.timings.propagate_ms = ms_since(t0);
      if (sr.is_zero(tp.z)) {
        mark_unsat(zero_evidence);
        return res;
      }
      res.marginals = std::move(tp.beliefs.marginals);
      res.z = tp.z;
      res.log_z = tp.log_z;
      return res;
    }
  }

  res.diagnostics = check_running_intersection(model, res.reports);
  auto t0 = Clock::now();
  auto beliefs = cluster_tree_propagate(model);
  res.timings.propagate_ms = ms_since(t0);
  if (beliefs.zero_evidence) {
    mark_unsat(zero_evidence);
    return res;
  }
  t0 = Clock::now();
  res.marginals = marginalize_modes(model, beliefs);
  res.timings.marginalize_ms = ms_since(t0);
  res.z = beliefs.z;
  res.log_z = beliefs.log_z;
  return res;
}

DescentReport check_descent_datum(const FactorGraph& graph, const std::vector<std::vector<VarId>>& cover,
                                  const std::vector<PotentialSlice>& tables, double tolerance) {
  if (cover.size() != tables.size()) throw std::invalid_argument("one table per cover piece is required");
  std::vector<std::vector<VarId>> pieces = cover;
  for (auto& p : pieces) std::sort(p.begin(), p.end());
  std::vector<bool> covered(graph.num_variables(), false);
  for (const auto& p : pieces) {
    for (VarId v : p) {
      if (v < 0 || static_cast<std::size_t>(v) >= graph.num_variables()) {
        throw std::invalid_argument("cover references unknown variable " + std::to_string(v));
      }
      covered[static_cast<std::size_t>(v)] = true;
    }
  }
  for (std::size_t v = 0; v < covered.size(); ++v) {
    if (!covered[v]) throw std::invalid_argument("variable " + std::to_string(v) + " lies in no cover piece");
  }
  for (const auto& f : graph.factors) {
    std::vector<VarId> s = f.scope;
    std::sort(s.begin(), s.end());
    const bool fits = std::any_of(pieces.begin(), pieces.end(), [&](const auto& p) {
      return std::includes(p.begin(), p.end(), s.begin(), s.end());
    });
    if (!fits) throw std::invalid_argument("factor " + std::to_string(f.id) + " fits in no cover piece");
  }
  std::vector<PotentialSlice> canon;
  canon.reserve(tables.size());
  for (std::size_t i = 0; i < tables.size(); ++i) {
    canon.push_back(canonicalize(tables[i]));
    if (canon.back().scope != pieces[i]) {
      throw std::invalid_argument("table " + std::to_string(i) + " is not defined on its cover piece");
    }
  }

  DescentReport report;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      std::vector<VarId> overlap;
      std::set_intersection(pieces[i].begin(), pieces[i].end(), pieces[j].begin(), pieces[j].end(),
                            std::back_inserter(overlap));
      if (overlap.empty()) continue;
      const auto a = restrict_to(canon[i], overlap, graph.semiring);
      const auto b = restrict_to(canon[j], overlap, graph.semiring);
      double gap = 0.0;
      for (std::size_t x = 0; x < a.table.size(); ++x) {
        if (a.table[x] == b.table[x]) continue;
        const double d = std::abs(a.table[x] - b.table[x]);
        gap = std::max(gap, std::isnan(d) ? std::numeric_limits<double>::infinity() : d);
      }
      report.overlaps.push_back({static_cast<int>(i), static_cast<int>(j), overlap, gap});
      report.max_discrepancy = std::max(report.max_discrepancy, gap);
      if (!(gap < tolerance || gap == 0.0)) report.compatible = false;
    }
  }
  return report;
}

PotentialSlice glue_descent_datum(const std::vector<PotentialSlice>& tables, const std::vector<int>& order) {
  const Semiring sr = Semiring::sum_product();
  std::vector<PotentialSlice> canon;
  for (const auto& t : tables) canon.push_back(canonicalize(t));

  std::vector<VarId> all;
  std::vector<int> cards;
  for (const auto& t : canon) {
    for (std::size_t i = 0; i < t.scope.size(); ++i) {
      if (!contains(all, t.scope[i])) {
        all.push_back(t.scope[i]);
        cards.push_back(t.cardinalities[i]);
      }
    }
  }
  std::vector<std::size_t> perm(all.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return all[a] < all[b]; });
  std::vector<VarId> scope;
  std::vector<int> scope_cards;
  for (auto p : perm) {
    scope.push_back(all[p]);
    scope_cards.push_back(cards[p]);
  }
  PotentialSlice glued = ones_over(scope, scope_cards, 1.0);

  std::vector<VarId> seen;
  std::vector<int> done;
  for (int idx : order) {
    const auto& piece = canon.at(static_cast<std::size_t>(idx));
    std::vector<VarId> sep;
    for (VarId v : piece.scope) {
      if (contains(seen, v)) sep.push_back(v);
    }
    if (!sep.empty()) {
      const bool inside_one = std::any_of(done.begin(), done.end(), [&](int j) {
        const auto& s = canon[static_cast<std::size_t>(j)].scope;
        return std::includes(s.begin(), s.end(), sep.begin(), sep.end());
      });
      if (!inside_one) throw std::invalid_argument("gluing order violates running intersection");
    }
    PotentialSlice ratio = piece;
    if (!sep.empty()) {
      const auto marginal = restrict_to(piece, sep, sr);
      PotentialSlice denom = ones_over(piece.scope, piece.cardinalities, 1.0);
      multiply_in(denom, marginal, sr);
      for (std::size_t x = 0; x < ratio.table.size(); ++x) {
        ratio.table[x] = denom.table[x] == 0.0 ? 0.0 : piece.table[x] / denom.table[x];
      }
    }
    multiply_in(glued, ratio, sr);
    for (VarId v : piece.scope) {
      if (!contains(seen, v)) seen.push_back(v);
    }
    std::sort(seen.begin(), seen.end());
    done.push_back(idx);
  }
  return glued;
}

std::optional<HolonomyCounterexample> holonomy_counterexample(const FactorGraph& graph,
                                                              const FundamentalCycle& cycle,
                                                              const HolonomyOptions& options) {
  const auto kernels = cycle_kernels(graph, cycle, options);
  BitMatrix h = kernels.front().matrix;
  for (std::size_t i = 1; i < kernels.size(); ++i) h = h * kernels[i].matrix;

  std::size_t x = 0, y = 0;
  bool found = false;
  for (std::size_t r = 0; r < h.rows() && !found; ++r) {
    for (std::size_t c = 0; c < h.cols() && !found; ++c) {
      if (r != c && h.get(r, c)) {
        x = r;
        y = c;
        found = true;
      }
    }
  }
  if (!found) return std::nullopt;

  // forward reachability from x with one predecessor per reached state
  const std::size_t k = kernels.size();
  std::vector<std::vector<long>> pred(k);
  std::vector<bool> frontier(h.rows(), false);
  frontier[x] = true;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& m = kernels[i].matrix;
    pred[i].assign(m.cols(), -1);
    std::vector<bool> next(m.cols(), false);
    for (std::size_t a = 0; a < m.rows(); ++a) {
      if (!frontier[a]) continue;
      for (std::size_t b = 0; b < m.cols(); ++b) {
        if (m.get(a, b) && !next[b]) {
          next[b] = true;
          pred[i][b] = static_cast<long>(a);
        }
      }
    }
    frontier = std::move(next);
  }
  // interface states s_{-1} = x, s_0 .. s_k = y
  std::vector<std::size_t> states(k + 1);
  states[k] = y;
  for (std::size_t i = k; i-- > 0;) states[i] = static_cast<std::size_t>(pred[i][states[i + 1]]);
  if (states[0] != x) throw std::logic_error("holonomy walk reconstruction failed");

  HolonomyCounterexample out;
  for (std::size_t i = 0; i < k; ++i) {
    const FactorId f = cycle.factors[i];
    const auto slice = factor_slice(graph, f);
    const auto& from = kernels[i].source;
    const auto& to = kernels[i].target;
    const auto from_state = decode(states[i], graph.cardinalities(from));
    const auto to_state = decode(states[i + 1], graph.cardinalities(to));
    PotentialSlice belief{slice.scope, slice.cardinalities, std::vector<double>(slice.table.size(), 0.0)};
    std::vector<State> digits(slice.scope.size(), 0);
    bool placed = false;
    for (std::size_t idx = 0; idx < slice.table.size() && !placed; ++idx) {
      bool match = !graph.semiring.is_zero(slice.table[idx], options.support_tolerance);
      for (std::size_t j = 0; j < from.size() && match; ++j) {
        const auto p = static_cast<std::size_t>(std::find(slice.scope.begin(), slice.scope.end(), from[j]) - slice.scope.begin());
        match = digits[p] == from_state[j];
      }
      for (std::size_t j = 0; j < to.size() && match; ++j) {
        const auto p = static_cast<std::size_t>(std::find(slice.scope.begin(), slice.scope.end(), to[j]) - slice.scope.begin());
        match = digits[p] == to_state[j];
      }
      if (match) {
        belief.table[idx] = 1.0;
        placed = true;
      }
      next_assignment(digits, slice.cardinalities);
    }
    if (!placed) throw std::logic_error("no supported assignment realizes the holonomy walk");
    out.cover.push_back(slice.scope);
    out.beliefs.push_back(canonicalize(belief));
  }
  const auto& chord_cards = graph.cardinalities(cycle.interfaces.back());
  out.start = decode(x, chord_cards);
  out.end = decode(y, chord_cards);
  return out;
}

}  // namespace hatcc
