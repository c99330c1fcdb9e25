#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hatcc/factor_graph.hpp"

namespace hatcc {

enum class Direction { VarToFac, FacToVar };

struct HalfEdge {
  FactorId factor = 0;
  VarId variable = 0;
  Direction direction = Direction::VarToFac;

  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
};

/// One incidence (factor, scope position). Edge ids are assigned in factor
/// order, then scope order, so a factor's edges are contiguous.
struct Incidence {
  FactorId factor;
  int position;
  VarId variable;
};

/// Messages for every half-edge, indexed by incidence id.
struct MessageState {
  std::vector<std::vector<double>> v2f;
  std::vector<std::vector<double>> f2v;

  friend bool operator==(const MessageState&, const MessageState&) = default;
};

/// One invertible scalar per half-edge, indexed like MessageState.
struct Gauge {
  std::vector<double> v2f;
  std::vector<double> f2v;
};

struct Beliefs {
  std::vector<std::vector<double>> marginals;
  std::vector<bool> degenerate;  // all-zero belief at this variable
  bool any_degenerate() const;
};

enum class InitKind { Uniform, Random };

struct BpOptions {
  int max_iters = 200;
  double threshold = 1e-6;
  double damping = 0.0;  // new <- (1 - damping) * new + damping * old
  bool normalize = true;
  InitKind init = InitKind::Uniform;
  std::uint64_t seed = 0;
  /// When set, each iteration applies this sequential schedule instead of
  /// the parallel operator.
  std::optional<std::vector<HalfEdge>> schedule;
  int oscillation_window = 50;
  int min_period = 2;
  int max_period = 10;
  double oscillation_tolerance = 1e-8;
};

struct BpResult {
  MessageState messages;
  Beliefs beliefs;
  int iterations = 0;
  bool converged = false;
  bool oscillating = false;
  int period = 0;  // detected residual period when oscillating
  std::vector<double> residual_trace;
};

/// Exact result of a leaf-to-root / root-to-leaf sweep on a tree.
struct TwoPassResult {
  MessageState messages;
  Beliefs beliefs;
  /// Evidence in semiring units: partition function (sum_product), best
  /// weight (max_product), min energy (min_sum), satisfiability (boolean).
  double z = 0.0;
  /// log z for the multiplicative semirings, accumulated without
  /// underflow; -z for min_sum; z for boolean.
  double log_z = 0.0;
};

/// Message passing over a fixed factor graph. The engine keeps a reference
/// to the graph, which must outlive it.
class BpEngine {
 public:
  explicit BpEngine(const FactorGraph& graph);

  const FactorGraph& graph() const { return *graph_; }
  const std::vector<Incidence>& incidences() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }
  /// Incidence ids touching variable v, ascending.
  const std::vector<int>& var_edges(VarId v) const { return var_edges_[static_cast<std::size_t>(v)]; }
  /// Incidence id of (f, v). Throws std::out_of_range if v is not in scope(f).
  int edge_id(FactorId f, VarId v) const;

  MessageState uniform_messages() const;
  MessageState random_messages(std::uint64_t seed) const;
  Gauge identity_gauge() const;

  std::vector<double> update_var_to_fac(const MessageState& m, int edge) const;
  std::vector<double> update_fac_to_var(const MessageState& m, int edge) const;
  std::vector<double> update(const MessageState& m, const HalfEdge& h) const;

  /// T_G: every half-edge recomputed from `m`. Damping blends with the old
  /// message; normalization is applied last.
  MessageState step_parallel(const MessageState& m, double damping = 0.0, bool normalize = false) const;

  /// U_{h_k} o ... o U_{h_1}; each update reads the freshest state.
  MessageState step_scheduled(const MessageState& m, const std::vector<HalfEdge>& schedule,
                              bool normalize = false) const;

  BpResult run(const BpOptions& options = {}) const;

  /// Product of incoming factor messages, normalized to sum 1 (sum_product),
  /// max 1 (max_product) or min 0 (min_sum). Boolean beliefs are the raw
  /// support indicator.
  Beliefs beliefs(const MessageState& m) const;

  /// Normalized factor beliefs phi_f * prod incoming variable messages
  /// (sum_product only), each in the factor's declared scope order.
  std::vector<std::vector<double>> factor_beliefs(const MessageState& m) const;

  /// Bethe approximation to log Z at the given messages (sum_product only).
  /// Exact on trees at the fixed point.
  double bethe_log_z(const MessageState& m) const;

  MessageState gauge_act(const Gauge& k, const MessageState& m) const;
  Gauge gauge_propagate(const Gauge& k) const;
  Gauge gauge_compose(const Gauge& a, const Gauge& b) const;

  /// Leaf-to-root then root-to-leaf schedule, one rooted sweep per
  /// connected component of the bipartite graph (root = its smallest
  /// variable). Exact when the bipartite graph is a forest.
  std::vector<HalfEdge> tree_schedule() const;
  bool is_forest() const;
  TwoPassResult two_pass() const;

  /// Largest L-infinity gap between the normalized messages of a and b.
  double residual(const MessageState& a, const MessageState& b) const;

 private:
  void normalize_message(std::vector<double>& msg) const;

  const FactorGraph* graph_;
  std::vector<Incidence> edges_;
  std::vector<int> factor_first_edge_;
  std::vector<std::vector<int>> var_edges_;
  std::vector<std::vector<std::size_t>> factor_strides_;
};

/// Smallest period p in [min_period, max_period] such that the last
/// `window` residuals satisfy |r_t - r_{t-p}| < tolerance, or 0.
int detect_period(const std::vector<double>& trace, int window, int min_period, int max_period,
                  double tolerance);

}  // namespace hatcc
