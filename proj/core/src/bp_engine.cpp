#include "hatcc/bp_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "hatcc/rng.hpp"

namespace hatcc {

bool Beliefs::any_degenerate() const {
  return std::any_of(degenerate.begin(), degenerate.end(), [](bool b) { return b; });
}

BpEngine::BpEngine(const FactorGraph& graph) : graph_(&graph) {
  var_edges_.assign(graph.num_variables(), {});
  factor_first_edge_.reserve(graph.num_factors() + 1);
  for (const auto& f : graph.factors) {
    factor_first_edge_.push_back(static_cast<int>(edges_.size()));
    for (std::size_t p = 0; p < f.scope.size(); ++p) {
      var_edges_[static_cast<std::size_t>(f.scope[p])].push_back(static_cast<int>(edges_.size()));
      edges_.push_back({f.id, static_cast<int>(p), f.scope[p]});
    }
    factor_strides_.push_back(strides_for(graph.cardinalities(f.scope)));
  }
  factor_first_edge_.push_back(static_cast<int>(edges_.size()));
}

int BpEngine::edge_id(FactorId f, VarId v) const {
  const auto& scope = graph_->factors.at(static_cast<std::size_t>(f)).scope;
  auto it = std::find(scope.begin(), scope.end(), v);
  if (it == scope.end()) {
    throw std::out_of_range("variable " + std::to_string(v) + " is not in the scope of factor " +
                            std::to_string(f));
  }
  return factor_first_edge_[static_cast<std::size_t>(f)] + static_cast<int>(it - scope.begin());
}

MessageState BpEngine::uniform_messages() const {
  const double one = graph_->semiring.one();
  MessageState m;
  m.v2f.reserve(edges_.size());
  m.f2v.reserve(edges_.size());
  for (const auto& e : edges_) {
    const auto card = static_cast<std::size_t>(graph_->cardinality(e.variable));
    m.v2f.emplace_back(card, one);
    m.f2v.emplace_back(card, one);
  }
  return m;
}

MessageState BpEngine::random_messages(std::uint64_t seed) const {
  MessageState m = uniform_messages();
  const Semiring sr = graph_->semiring;
  if (sr.kind() == SemiringKind::Boolean) return m;
  Rng rng(seed);
  auto draw = [&](std::vector<double>& msg) {
    for (double& x : msg) {
      const double u = 0.05 + 0.95 * rng.uniform01();
      x = sr.kind() == SemiringKind::MinSum ? -std::log(u) : u;
    }
    normalize_message(msg);
  };
  for (auto& msg : m.v2f) draw(msg);
  for (auto& msg : m.f2v) draw(msg);
  return m;
}

Gauge BpEngine::identity_gauge() const {
  const double one = graph_->semiring.one();
  return Gauge{std::vector<double>(edges_.size(), one), std::vector<double>(edges_.size(), one)};
}

std::vector<double> BpEngine::update_var_to_fac(const MessageState& m, int edge) const {
  const Semiring sr = graph_->semiring;
  const auto& e = edges_[static_cast<std::size_t>(edge)];
  std::vector<double> out(static_cast<std::size_t>(graph_->cardinality(e.variable)), sr.one());
  for (int other : var_edges_[static_cast<std::size_t>(e.variable)]) {
    if (other == edge) continue;
    const auto& in = m.f2v[static_cast<std::size_t>(other)];
    for (std::size_t x = 0; x < out.size(); ++x) out[x] = sr.mul(out[x], in[x]);
  }
  return out;
}

std::vector<double> BpEngine::update_fac_to_var(const MessageState& m, int edge) const {
  const Semiring sr = graph_->semiring;
  const auto& e = edges_[static_cast<std::size_t>(edge)];
  const auto& f = graph_->factors[static_cast<std::size_t>(e.factor)];
  const int first = factor_first_edge_[static_cast<std::size_t>(e.factor)];
  const std::size_t arity = f.scope.size();
  const auto target = static_cast<std::size_t>(e.position);

  std::vector<double> out(static_cast<std::size_t>(graph_->cardinality(e.variable)), sr.zero());
  std::vector<int> cards = graph_->cardinalities(f.scope);
  std::vector<State> digits(arity, 0);
  for (std::size_t idx = 0; idx < f.table.size(); ++idx) {
    double w = f.table[idx];
    for (std::size_t q = 0; q < arity && !sr.is_zero(w); ++q) {
      if (q == target) continue;
      w = sr.mul(w, m.v2f[static_cast<std::size_t>(first) + q][static_cast<std::size_t>(digits[q])]);
    }
    auto& slot = out[static_cast<std::size_t>(digits[target])];
    slot = sr.add(slot, w);
    next_assignment(digits, cards);
  }
  return out;
}

std::vector<double> BpEngine::update(const MessageState& m, const HalfEdge& h) const {
  const int e = edge_id(h.factor, h.variable);
  return h.direction == Direction::VarToFac ? update_var_to_fac(m, e) : update_fac_to_var(m, e);
}

void BpEngine::normalize_message(std::vector<double>& msg) const {
  const Semiring sr = graph_->semiring;
  if (sr.kind() == SemiringKind::Boolean) return;
  normalize_in_place(msg, sr);
}

namespace {

void blend(std::vector<double>& fresh, const std::vector<double>& old, double damping) {
  if (damping == 0.0) return;
  for (std::size_t x = 0; x < fresh.size(); ++x) {
    if (fresh[x] == old[x]) continue;  // keeps infinities intact
    fresh[x] = (1.0 - damping) * fresh[x] + damping * old[x];
  }
}

}  // namespace

MessageState BpEngine::step_parallel(const MessageState& m, double damping, bool normalize) const {
  MessageState next;
  next.v2f.resize(edges_.size());
  next.f2v.resize(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    next.v2f[e] = update_var_to_fac(m, static_cast<int>(e));
    next.f2v[e] = update_fac_to_var(m, static_cast<int>(e));
    blend(next.v2f[e], m.v2f[e], damping);
    blend(next.f2v[e], m.f2v[e], damping);
    if (normalize) {
      normalize_message(next.v2f[e]);
      normalize_message(next.f2v[e]);
    }
  }
  return next;
}

MessageState BpEngine::step_scheduled(const MessageState& m, const std::vector<HalfEdge>& schedule,
                                      bool normalize) const {
  MessageState state = m;
  for (const auto& h : schedule) {
    const int e = edge_id(h.factor, h.variable);
    auto fresh = h.direction == Direction::VarToFac ? update_var_to_fac(state, e)
                                                    : update_fac_to_var(state, e);
    if (normalize) normalize_message(fresh);
    auto& slot = h.direction == Direction::VarToFac ? state.v2f[static_cast<std::size_t>(e)]
                                                    : state.f2v[static_cast<std::size_t>(e)];
    slot = std::move(fresh);
  }
  return state;
}

double BpEngine::residual(const MessageState& a, const MessageState& b) const {
  double worst = 0.0;
  auto compare = [&](const std::vector<std::vector<double>>& xs,
                     const std::vector<std::vector<double>>& ys) {
    for (std::size_t e = 0; e < xs.size(); ++e) {
      std::vector<double> x = xs[e];
      std::vector<double> y = ys[e];
      normalize_message(x);
      normalize_message(y);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == y[i]) continue;
        const double d = std::abs(x[i] - y[i]);
        worst = std::isnan(d) ? std::numeric_limits<double>::infinity() : std::max(worst, d);
      }
    }
  };
  compare(a.v2f, b.v2f);
  compare(a.f2v, b.f2v);
  return worst;
}

int detect_period(const std::vector<double>& trace, int window, int min_period, int max_period,
                  double tolerance) {
  const auto n = static_cast<int>(trace.size());
  if (window < 2 || n < window) return 0;
  const int start = n - window;
  for (int p = min_period; p <= max_period && p < window; ++p) {
    bool periodic = true;
    for (int t = start + p; t < n && periodic; ++t) {
      const double d = std::abs(trace[static_cast<std::size_t>(t)] - trace[static_cast<std::size_t>(t - p)]);
      periodic = d < tolerance || trace[static_cast<std::size_t>(t)] == trace[static_cast<std::size_t>(t - p)];
    }
    if (periodic) return p;
  }
  return 0;
}

BpResult BpEngine::run(const BpOptions& options) const {
  BpResult result;
  result.messages =
      options.init == InitKind::Random ? random_messages(options.seed) : uniform_messages();
  for (int it = 1; it <= options.max_iters; ++it) {
    MessageState next;
    if (options.schedule) {
      next = step_scheduled(result.messages, *options.schedule, options.normalize);
    } else {
      next = step_parallel(result.messages, options.damping, options.normalize);
    }
    const double r = residual(result.messages, next);
    result.residual_trace.push_back(r);
    result.messages = std::move(next);
    result.iterations = it;
    if (r < options.threshold) {
      result.converged = true;
      break;
    }
  }
  if (!result.converged && !result.residual_trace.empty() &&
      result.residual_trace.back() >= options.threshold) {
    result.period = detect_period(result.residual_trace, options.oscillation_window, options.min_period,
                                  options.max_period, options.oscillation_tolerance);
    result.oscillating = result.period > 0;
  }
  result.beliefs = beliefs(result.messages);
  return result;
}

Beliefs BpEngine::beliefs(const MessageState& m) const {
  const Semiring sr = graph_->semiring;
  Beliefs b;
  b.marginals.resize(graph_->num_variables());
  b.degenerate.assign(graph_->num_variables(), false);
  for (std::size_t v = 0; v < graph_->num_variables(); ++v) {
    std::vector<double> belief(static_cast<std::size_t>(graph_->variables[v].cardinality), sr.one());
    for (int e : var_edges_[v]) {
      const auto& in = m.f2v[static_cast<std::size_t>(e)];
      for (std::size_t x = 0; x < belief.size(); ++x) belief[x] = sr.mul(belief[x], in[x]);
    }
    if (sr.is_zero(semiring_total(belief, sr))) {
      b.degenerate[v] = true;
    } else {
      normalize_message(belief);
    }
    b.marginals[v] = std::move(belief);
  }
  return b;
}

std::vector<std::vector<double>> BpEngine::factor_beliefs(const MessageState& m) const {
  const Semiring sr = graph_->semiring;
  if (sr.kind() != SemiringKind::SumProduct) {
    throw std::invalid_argument("factor beliefs require the sum_product semiring");
  }
  std::vector<std::vector<double>> out;
  out.reserve(graph_->num_factors());
  for (const auto& f : graph_->factors) {
    const auto first = static_cast<std::size_t>(factor_first_edge_[static_cast<std::size_t>(f.id)]);
    std::vector<int> cards = graph_->cardinalities(f.scope);
    std::vector<State> digits(f.scope.size(), 0);
    std::vector<double> b(f.table.size());
    for (std::size_t idx = 0; idx < f.table.size(); ++idx) {
      double w = f.table[idx];
      for (std::size_t q = 0; q < f.scope.size(); ++q) w *= m.v2f[first + q][static_cast<std::size_t>(digits[q])];
      b[idx] = w;
      next_assignment(digits, cards);
    }
    normalize_in_place(b, sr);
    out.push_back(std::move(b));
  }
  return out;
}

double BpEngine::bethe_log_z(const MessageState& m) const {
  const auto fb = factor_beliefs(m);
  const auto vb = beliefs(m);
  double total = 0.0;
  for (std::size_t f = 0; f < fb.size(); ++f) {
    const auto& table = graph_->factors[f].table;
    for (std::size_t i = 0; i < table.size(); ++i) {
      const double b = fb[f][i];
      if (b <= 0.0) continue;
      total += b * (std::log(table[i]) - std::log(b));
    }
  }
  for (std::size_t v = 0; v < graph_->num_variables(); ++v) {
    const double degree = static_cast<double>(var_edges_[v].size());
    double neg_entropy = 0.0;
    for (double b : vb.marginals[v]) {
      if (b > 0.0) neg_entropy += b * std::log(b);
    }
    total += (degree - 1.0) * neg_entropy;
  }
  return total;
}

MessageState BpEngine::gauge_act(const Gauge& k, const MessageState& m) const {
  const Semiring sr = graph_->semiring;
  MessageState out = m;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    for (double& x : out.v2f[e]) x = sr.mul(k.v2f[e], x);
    for (double& x : out.f2v[e]) x = sr.mul(k.f2v[e], x);
  }
  return out;
}

Gauge BpEngine::gauge_propagate(const Gauge& k) const {
  const Semiring sr = graph_->semiring;
  Gauge out = identity_gauge();
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto& inc = edges_[e];
    // v -> f picks up every other factor's f -> v scalar
    for (int other : var_edges_[static_cast<std::size_t>(inc.variable)]) {
      if (other != static_cast<int>(e)) out.v2f[e] = sr.mul(out.v2f[e], k.f2v[static_cast<std::size_t>(other)]);
    }
    // f -> v picks up every other scope variable's v -> f scalar
    const int first = factor_first_edge_[static_cast<std::size_t>(inc.factor)];
    const int last = factor_first_edge_[static_cast<std::size_t>(inc.factor) + 1];
    for (int other = first; other < last; ++other) {
      if (other != static_cast<int>(e)) out.f2v[e] = sr.mul(out.f2v[e], k.v2f[static_cast<std::size_t>(other)]);
    }
  }
  return out;
}

Gauge BpEngine::gauge_compose(const Gauge& a, const Gauge& b) const {
  const Semiring sr = graph_->semiring;
  Gauge out = a;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out.v2f[e] = sr.mul(a.v2f[e], b.v2f[e]);
    out.f2v[e] = sr.mul(a.f2v[e], b.f2v[e]);
  }
  return out;
}

namespace {

// Bipartite node numbering: variables 0..n-1, factors n..n+|F|-1.
struct SpanningSweep {
  std::vector<std::vector<int>> components;  // BFS order, root first
  std::vector<int> parent_edge;               // incidence to the parent, -1 at roots
  std::vector<int> component_root;            // root variable per component
};

SpanningSweep bfs_forest(const FactorGraph& g, const std::vector<Incidence>& edges,
                         const std::vector<std::vector<int>>& var_edges,
                         const std::vector<int>& factor_first_edge) {
  const int n = static_cast<int>(g.num_variables());
  const int total = n + static_cast<int>(g.num_factors());
  SpanningSweep sweep;
  sweep.parent_edge.assign(static_cast<std::size_t>(total), -1);
  std::vector<bool> seen(static_cast<std::size_t>(total), false);
  for (int root = 0; root < n; ++root) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    std::vector<int> order{root};
    seen[static_cast<std::size_t>(root)] = true;
    for (std::size_t head = 0; head < order.size(); ++head) {
      const int node = order[head];
      auto visit = [&](int next, int edge) {
        if (seen[static_cast<std::size_t>(next)]) return;
        seen[static_cast<std::size_t>(next)] = true;
        sweep.parent_edge[static_cast<std::size_t>(next)] = edge;
        order.push_back(next);
      };
      if (node < n) {
        for (int e : var_edges[static_cast<std::size_t>(node)]) visit(n + edges[static_cast<std::size_t>(e)].factor, e);
      } else {
        const auto f = static_cast<std::size_t>(node - n);
        for (int e = factor_first_edge[f]; e < factor_first_edge[f + 1]; ++e) {
          visit(edges[static_cast<std::size_t>(e)].variable, e);
        }
      }
    }
    sweep.components.push_back(std::move(order));
    sweep.component_root.push_back(root);
  }
  return sweep;
}

}  // namespace

std::vector<HalfEdge> BpEngine::tree_schedule() const {
  const int n = static_cast<int>(graph_->num_variables());
  const auto sweep = bfs_forest(*graph_, edges_, var_edges_, factor_first_edge_);
  std::vector<HalfEdge> up;
  std::vector<HalfEdge> down;
  for (const auto& order : sweep.components) {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int e = sweep.parent_edge[static_cast<std::size_t>(*it)];
      if (e < 0) continue;
      const auto& inc = edges_[static_cast<std::size_t>(e)];
      up.push_back({inc.factor, inc.variable, *it < n ? Direction::VarToFac : Direction::FacToVar});
    }
    for (int node : order) {
      const int e = sweep.parent_edge[static_cast<std::size_t>(node)];
      if (e < 0) continue;
      const auto& inc = edges_[static_cast<std::size_t>(e)];
      down.push_back({inc.factor, inc.variable, node < n ? Direction::FacToVar : Direction::VarToFac});
    }
  }
  up.insert(up.end(), down.begin(), down.end());
  return up;
}

bool BpEngine::is_forest() const {
  const auto sweep = bfs_forest(*graph_, edges_, var_edges_, factor_first_edge_);
  std::size_t tree_edges = 0;
  for (const auto& order : sweep.components) tree_edges += order.size() - 1;
  // factors unreachable from any variable cannot exist (scopes are nonempty)
  return tree_edges == edges_.size();
}

TwoPassResult BpEngine::two_pass() const {
  const Semiring sr = graph_->semiring;
  const bool multiplicative =
      sr.kind() == SemiringKind::SumProduct || sr.kind() == SemiringKind::MaxProduct;
  const int n = static_cast<int>(graph_->num_variables());
  const auto sweep = bfs_forest(*graph_, edges_, var_edges_, factor_first_edge_);

  TwoPassResult result;
  MessageState& m = result.messages;
  m = uniform_messages();

  double log_scale = 0.0;  // multiplicative: sum of logs; min_sum: sum of shifts
  bool dead = false;
  auto absorb = [&](double scale) {
    if (sr.is_zero(scale)) {
      dead = true;
    } else if (multiplicative) {
      log_scale += std::log(scale);
    } else if (sr.kind() == SemiringKind::MinSum) {
      log_scale += scale;
    }
  };

  for (const auto& order : sweep.components) {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int e = sweep.parent_edge[static_cast<std::size_t>(*it)];
      if (e < 0) continue;
      auto& slot = *it < n ? m.v2f[static_cast<std::size_t>(e)] : m.f2v[static_cast<std::size_t>(e)];
      slot = *it < n ? update_var_to_fac(m, e) : update_fac_to_var(m, e);
      if (sr.kind() != SemiringKind::Boolean) absorb(normalize_in_place(slot, sr));
    }
  }
  // evidence at each root, read after the upward pass
  bool satisfiable = true;
  for (int root : sweep.component_root) {
    std::vector<double> belief(static_cast<std::size_t>(graph_->cardinality(root)), sr.one());
    for (int e : var_edges_[static_cast<std::size_t>(root)]) {
      const auto& in = m.f2v[static_cast<std::size_t>(e)];
      for (std::size_t x = 0; x < belief.size(); ++x) belief[x] = sr.mul(belief[x], in[x]);
    }
    const double total = semiring_total(belief, sr);
    if (sr.kind() == SemiringKind::Boolean) {
      satisfiable = satisfiable && total != 0.0;
    } else {
      absorb(total);
    }
  }
  for (const auto& order : sweep.components) {
    for (int node : order) {
      const int e = sweep.parent_edge[static_cast<std::size_t>(node)];
      if (e < 0) continue;
      // parent sends down to node
      auto& slot = node < n ? m.f2v[static_cast<std::size_t>(e)] : m.v2f[static_cast<std::size_t>(e)];
      slot = node < n ? update_fac_to_var(m, e) : update_var_to_fac(m, e);
      if (sr.kind() != SemiringKind::Boolean) normalize_in_place(slot, sr);
    }
  }
  result.beliefs = beliefs(m);

  switch (sr.kind()) {
    case SemiringKind::SumProduct:
    case SemiringKind::MaxProduct:
      result.log_z = dead ? -std::numeric_limits<double>::infinity() : log_scale;
      result.z = dead ? 0.0 : std::exp(log_scale);
      break;
    case SemiringKind::MinSum:
      result.z = dead ? sr.zero() : log_scale;
      result.log_z = -result.z;
      break;
    case SemiringKind::Boolean:
      result.z = satisfiable ? 1.0 : 0.0;
      result.log_z = result.z;
      break;
  }
  return result;
}

}  // namespace hatcc
