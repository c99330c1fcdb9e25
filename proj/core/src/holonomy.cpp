#include "hatcc/holonomy.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace hatcc {

namespace {

std::vector<std::size_t> positions_in(const std::vector<VarId>& scope, std::span<const VarId> vars) {
  std::vector<std::size_t> pos;
  pos.reserve(vars.size());
  for (VarId v : vars) {
    auto it = std::find(scope.begin(), scope.end(), v);
    if (it == scope.end()) {
      throw std::invalid_argument("variable " + std::to_string(v) + " is not in the factor scope");
    }
    pos.push_back(static_cast<std::size_t>(it - scope.begin()));
  }
  return pos;
}

std::size_t space_size(const PotentialSlice& slice, const std::vector<std::size_t>& pos) {
  std::size_t n = 1;
  for (std::size_t p : pos) n *= static_cast<std::size_t>(slice.cardinalities[p]);
  return n;
}

}  // namespace

TransportKernel transport_kernel(const PotentialSlice& slice, std::span<const VarId> source,
                                 std::span<const VarId> target, Semiring semiring,
                                 double support_tolerance) {
  const auto src = positions_in(slice.scope, source);
  const auto dst = positions_in(slice.scope, target);
  TransportKernel k{{source.begin(), source.end()},
                    {target.begin(), target.end()},
                    BitMatrix(space_size(slice, src), space_size(slice, dst))};
  // a full assignment fixes both projections, so shared coordinates agree
  std::vector<State> digits(slice.scope.size(), 0);
  for (std::size_t idx = 0; idx < slice.table.size(); ++idx) {
    if (!semiring.is_zero(slice.table[idx], support_tolerance)) {
      std::size_t x = 0;
      for (std::size_t p : src) x = x * static_cast<std::size_t>(slice.cardinalities[p]) + static_cast<std::size_t>(digits[p]);
      std::size_t y = 0;
      for (std::size_t p : dst) y = y * static_cast<std::size_t>(slice.cardinalities[p]) + static_cast<std::size_t>(digits[p]);
      k.matrix.set(x, y);
    }
    next_assignment(digits, slice.cardinalities);
  }
  return k;
}

TransportKernel transport_kernel(const FactorGraph& graph, FactorId f, std::span<const VarId> source,
                                 std::span<const VarId> target, double support_tolerance) {
  return transport_kernel(factor_slice(graph, f), source, target, graph.semiring, support_tolerance);
}

std::vector<std::vector<int>> strongly_connected_components(const BitMatrix& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;

  struct Frame {
    int node;
    int next_col;
  };
  std::vector<Frame> call;
  for (int start = 0; start < n; ++start) {
    if (index[static_cast<std::size_t>(start)] >= 0) continue;
    call.push_back({start, 0});
    index[static_cast<std::size_t>(start)] = low[static_cast<std::size_t>(start)] = counter++;
    stack.push_back(start);
    on_stack[static_cast<std::size_t>(start)] = true;
    while (!call.empty()) {
      Frame& fr = call.back();
      const auto x = static_cast<std::size_t>(fr.node);
      bool descended = false;
      while (fr.next_col < n) {
        const int y = fr.next_col++;
        if (!adjacency.get(x, static_cast<std::size_t>(y))) continue;
        const auto uy = static_cast<std::size_t>(y);
        if (index[uy] < 0) {
          index[uy] = low[uy] = counter++;
          stack.push_back(y);
          on_stack[uy] = true;
          call.push_back({y, 0});
          descended = true;
          break;
        }
        if (on_stack[uy]) low[x] = std::min(low[x], index[uy]);
      }
      if (descended) continue;
      if (low[x] == index[x]) {
        std::vector<int> comp;
        int y;
        do {
          y = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(y)] = false;
          comp.push_back(y);
        } while (y != fr.node);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
      const int finished = fr.node;
      call.pop_back();
      if (!call.empty()) {
        const auto parent = static_cast<std::size_t>(call.back().node);
        low[parent] = std::min(low[parent], low[static_cast<std::size_t>(finished)]);
      }
    }
  }
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

ModeQuotient mode_quotient(const BitMatrix& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("holonomy matrix must be square");
  ModeQuotient q;
  q.modes = strongly_connected_components(h);
  q.mode_of.assign(h.rows(), -1);
  for (std::size_t m = 0; m < q.modes.size(); ++m) {
    for (int x : q.modes[m]) q.mode_of[static_cast<std::size_t>(x)] = static_cast<int>(m);
  }
  q.fixed_point_mask.resize(h.rows());
  for (std::size_t x = 0; x < h.rows(); ++x) q.fixed_point_mask[x] = h.get(x, x);
  return q;
}

bool is_trivial(const BitMatrix& h) { return h.is_identity(); }

std::vector<TransportKernel> cycle_kernels(const FactorGraph& graph, const FundamentalCycle& cycle,
                                           const HolonomyOptions& options) {
  const std::size_t k = cycle.factors.size() - 1;
  if (cycle.interfaces.size() != cycle.factors.size() || cycle.factors.size() < 2) {
    throw std::invalid_argument("malformed fundamental cycle");
  }
  for (const auto& j : cycle.interfaces) {
    const auto cards = graph.cardinalities(j);
    try {
      state_space_size(cards, options.interface_cap);
    } catch (const CapacityError&) {
      throw CapacityError("interface state space exceeds the cap of " + std::to_string(options.interface_cap) +
                          " on the cycle of chord " + std::to_string(cycle.chord));
    }
  }
  std::vector<TransportKernel> kernels;
  kernels.reserve(k + 1);
  for (std::size_t i = 0; i <= k; ++i) {
    const auto& from = cycle.interfaces[i == 0 ? k : i - 1];
    const auto& to = cycle.interfaces[i];
    kernels.push_back(transport_kernel(graph, cycle.factors[i], from, to, options.support_tolerance));
  }
  return kernels;
}

BitMatrix holonomy_matrix(const FactorGraph& graph, const FundamentalCycle& cycle,
                          const HolonomyOptions& options) {
  const auto kernels = cycle_kernels(graph, cycle, options);
  BitMatrix h = kernels.front().matrix;
  for (std::size_t i = 1; i < kernels.size(); ++i) h = h * kernels[i].matrix;
  return h;
}

HolonomyReport holonomy_report(const FactorGraph& graph, const FactorNerve& nerve, const Backbone& backbone,
                               int chord, const HolonomyOptions& options) {
  HolonomyReport r;
  const auto& edge = nerve.edges.at(static_cast<std::size_t>(chord));
  r.chord = chord;
  r.u = edge.u;
  r.v = edge.v;
  r.interface = edge.interface;
  r.cycle = fundamental_cycle(nerve, backbone, chord);
  r.matrix = holonomy_matrix(graph, r.cycle, options);
  r.quotient = mode_quotient(r.matrix);
  r.trivial = is_trivial(r.matrix);
  return r;
}

std::vector<HolonomyReport> holonomy_reports(const FactorGraph& graph, const FactorNerve& nerve,
                                             const Backbone& backbone, const HolonomyOptions& options) {
  std::vector<HolonomyReport> out;
  out.reserve(backbone.chords.size());
  for (int c : backbone.chords) out.push_back(holonomy_report(graph, nerve, backbone, c, options));
  return out;
}

}  // namespace hatcc
