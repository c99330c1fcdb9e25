#pragma once

#include <cstddef>
#include <vector>

#include "hatcc/bit_matrix.hpp"
#include "hatcc/factor_graph.hpp"
#include "hatcc/nerve.hpp"

namespace hatcc {

/// Rows index Ω(source), columns Ω(target), both in the table addressing
/// convention over the listed variable order.
struct TransportKernel {
  std::vector<VarId> source;
  std::vector<VarId> target;
  BitMatrix matrix;
};

struct HolonomyOptions {
  /// Largest admissible |Ω(J)| for any interface on the cycle.
  std::size_t interface_cap = std::size_t{1} << 16;
  /// Table entries with |value| <= tolerance count as zero (multiplicative
  /// semirings only; 0 means exact support).
  double support_tolerance = 0.0;
};

/// K(x, y) = 1 iff some full assignment of the slice restricting to x on U
/// and y on V has nonzero weight. Shared variables of U and V must agree.
TransportKernel transport_kernel(const PotentialSlice& slice, std::span<const VarId> source,
                                 std::span<const VarId> target, Semiring semiring,
                                 double support_tolerance = 0.0);
TransportKernel transport_kernel(const FactorGraph& graph, FactorId f, std::span<const VarId> source,
                                 std::span<const VarId> target, double support_tolerance = 0.0);

/// Strongly connected components of the digraph x -> y iff H(x, y).
struct ModeQuotient {
  std::vector<std::vector<int>> modes;  // each ascending; ordered by smallest state
  std::vector<int> mode_of;             // state -> mode index
  std::vector<bool> fixed_point_mask;   // H(x, x)

  std::size_t num_modes() const { return modes.size(); }
};

ModeQuotient mode_quotient(const BitMatrix& h);

/// Mutual-reachability classes of a square Boolean matrix, iterative Tarjan.
std::vector<std::vector<int>> strongly_connected_components(const BitMatrix& adjacency);

bool is_trivial(const BitMatrix& h);

struct HolonomyReport {
  int chord = -1;  // nerve edge index
  FactorId u = 0;
  FactorId v = 0;
  std::vector<VarId> interface;
  FundamentalCycle cycle;
  BitMatrix matrix;
  ModeQuotient quotient;
  bool trivial = false;
};

/// H = K_{f0}^{J_k -> J_0} K_{f1}^{J_0 -> J_1} ... K_{fk}^{J_{k-1} -> J_k}:
/// transport starts and ends on the chord interface. Throws CapacityError
/// when an interface exceeds the cap.
BitMatrix holonomy_matrix(const FactorGraph& graph, const FundamentalCycle& cycle,
                          const HolonomyOptions& options = {});

/// The individual kernels of the product above, in multiplication order.
std::vector<TransportKernel> cycle_kernels(const FactorGraph& graph, const FundamentalCycle& cycle,
                                           const HolonomyOptions& options = {});

HolonomyReport holonomy_report(const FactorGraph& graph, const FactorNerve& nerve, const Backbone& backbone,
                               int chord, const HolonomyOptions& options = {});

/// One report per chord, in chord order.
std::vector<HolonomyReport> holonomy_reports(const FactorGraph& graph, const FactorNerve& nerve,
                                             const Backbone& backbone, const HolonomyOptions& options = {});

}  // namespace hatcc
