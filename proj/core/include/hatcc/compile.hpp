#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hatcc/bp_engine.hpp"
#include "hatcc/factor_graph.hpp"
#include "hatcc/holonomy.hpp"
#include "hatcc/nerve.hpp"

namespace hatcc {

/// Selector over (J_e..., m_e): one iff q_e(x) = m and H_e(x, x) = 1.
/// The mode variable comes last in the scope.
FactorDecl build_selector(const FactorGraph& graph, const HolonomyReport& report, VarId mode_var,
                          FactorId id);

/// True when the selector has no nonzero entry.
bool selector_is_unsat(const FactorDecl& selector, Semiring semiring);

struct UnsatCertificate {
  int chord = -1;  // nerve edge index, or -1 when the evidence itself vanished
  FactorId u = -1;
  FactorId v = -1;
  std::vector<VarId> interface;
  FactorDecl selector;
  std::string reason;
};

struct CompiledChord {
  int chord = -1;       // nerve edge index
  VarId mode_var = -1;  // |V| + chord position
  FactorId selector = -1;
  FactorId anchor = -1;  // cluster the selector hangs from (f_0 of the cycle)
};

/// Edge of the augmented cluster tree.
struct ClusterEdge {
  FactorId a = 0;
  FactorId b = 0;
  std::vector<VarId> separator;
};

struct CompiledModel {
  FactorGraph graph;  // original variables and factors, then modes and selectors
  std::size_t original_var_count = 0;
  std::size_t original_factor_count = 0;
  std::vector<CompiledChord> chords;
  std::vector<ClusterEdge> tree_edges;  // backbone edges, then one edge per selector
  std::vector<FactorId> roots;          // per component
};

struct AugmentResult {
  std::optional<CompiledModel> model;
  std::optional<UnsatCertificate> unsat;
};

/// Appends a mode variable and a selector per chord. Each selector is a
/// leaf of the cluster tree attached to its cycle's f_0 through J_e, so
/// the tree keeps |edges| = |clusters| - components.
AugmentResult augment(const FactorGraph& graph, const FactorNerve& nerve, const Backbone& backbone,
                      const std::vector<HolonomyReport>& reports);

/// Whether the edges form a forest with exactly |clusters| - components edges.
bool cluster_tree_is_forest(const CompiledModel& model);

struct CoverDiagnostics {
  bool running_intersection = true;
  std::vector<VarId> split_variables;  // clusters holding them are disconnected
  bool exactness_certified = true;
  std::vector<std::string> warnings;
};

/// Running-intersection check over the augmented tree. A split variable is
/// harmless when every chord joining two of its copies has a holonomy with
/// no off-diagonal entry: any supported configuration of the split model
/// then forces the copies to agree.
CoverDiagnostics check_running_intersection(const CompiledModel& model,
                                            const std::vector<HolonomyReport>& reports);

struct ClusterBeliefs {
  std::vector<PotentialSlice> beliefs;  // per cluster, ascending scope, normalized
  double z = 0.0;                       // evidence in semiring units (see TwoPassResult)
  double log_z = 0.0;
  bool zero_evidence = false;
};

/// Two-pass separator message passing over the augmented cluster tree.
ClusterBeliefs cluster_tree_propagate(const CompiledModel& model);

/// Marginal of each original variable read from the first cluster that
/// contains it; variables in no factor get the normalized all-one vector.
std::vector<std::vector<double>> marginalize_modes(const CompiledModel& model, const ClusterBeliefs& beliefs);

enum class HatccStatus { Ok, Unsat };

struct HatccOptions {
  BackboneOptions backbone;
  HolonomyOptions holonomy;
  /// Skip the tree fast path even when the factor graph is a forest.
  bool force_cluster_tree = false;
};

struct PhaseTimings {
  double nerve_ms = 0, backbone_ms = 0, holonomy_ms = 0, modes_ms = 0, augment_ms = 0,
         propagate_ms = 0, marginalize_ms = 0;
  double compile_ms() const { return nerve_ms + backbone_ms + holonomy_ms + modes_ms + augment_ms; }
  double total_ms() const { return compile_ms() + propagate_ms + marginalize_ms; }
};

struct HatccResult {
  HatccStatus status = HatccStatus::Ok;
  std::vector<std::vector<double>> marginals;
  double z = 0.0;
  double log_z = 0.0;
  FactorNerve nerve;
  Backbone backbone;
  std::vector<HolonomyReport> reports;
  std::optional<UnsatCertificate> unsat;
  bool tree_fast_path = false;
  CoverDiagnostics diagnostics;
  std::size_t augmented_vars = 0;
  std::size_t augmented_factors = 0;
  std::size_t augmented_tree_edges = 0;
  PhaseTimings timings;
};

HatccResult hatcc_infer(const FactorGraph& graph, const HatccOptions& options = {});

/// Phases 1 to 5 only (nerve through augmentation), for timing studies.
AugmentResult hatcc_compile(const FactorGraph& graph, const HatccOptions& options = {},
                            PhaseTimings* timings = nullptr);

struct OverlapDiscrepancy {
  int i = 0;
  int j = 0;
  std::vector<VarId> overlap;
  double discrepancy = 0.0;  // L-infinity gap of the two restrictions
};

struct DescentReport {
  std::vector<OverlapDiscrepancy> overlaps;  // nonempty pairwise overlaps, (i, j) ascending
  double max_discrepancy = 0.0;
  bool compatible = true;
};

/// Pairwise compatibility of local tables on a cover. Every variable must
/// lie in some piece and every factor scope inside some piece, and each
/// table's scope must equal its piece as a set; otherwise
/// std::invalid_argument.
DescentReport check_descent_datum(const FactorGraph& graph, const std::vector<std::vector<VarId>>& cover,
                                  const std::vector<PotentialSlice>& tables, double tolerance = 1e-12);

/// Global table from compatible sum-product marginals on a cover, built as
/// prod_i F_i / F_i|S_i with S_i the overlap of piece i with the earlier
/// ones (0/0 = 0). The order must satisfy running intersection: each S_i
/// lies inside one earlier piece. Result scope is the union, ascending.
PotentialSlice glue_descent_datum(const std::vector<PotentialSlice>& tables, const std::vector<int>& order);

struct HolonomyCounterexample {
  std::vector<std::vector<VarId>> cover;  // scope of each cycle factor
  std::vector<PotentialSlice> beliefs;    // indicator of one supported assignment each
  std::vector<State> start;               // chord-interface state x
  std::vector<State> end;                 // chord-interface state y != x
};

/// Beliefs that agree on every consecutive pair of the cycle but disagree
/// across the chord, built from a walk witnessing H(x, y) = 1 with x != y.
/// Empty when H has no off-diagonal entry.
std::optional<HolonomyCounterexample> holonomy_counterexample(const FactorGraph& graph,
                                                              const FundamentalCycle& cycle,
                                                              const HolonomyOptions& options = {});

}  // namespace hatcc
