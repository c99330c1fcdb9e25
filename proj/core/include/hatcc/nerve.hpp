#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hatcc/factor_graph.hpp"

namespace hatcc {

/// Nerve edge between two factors with overlapping scopes; u < v.
struct NerveEdge {
  FactorId u = 0;
  FactorId v = 0;
  std::vector<VarId> interface;  // sorted scope(u) ∩ scope(v)
  double weight = 0.0;           // sum of log cardinalities over the interface
};

struct FactorNerve {
  int num_factors = 0;
  std::vector<NerveEdge> edges;                         // sorted by (u, v)
  std::vector<std::vector<std::pair<FactorId, int>>> adjacency;  // (neighbor, edge), neighbor ascending

  int degree(FactorId f) const { return static_cast<int>(adjacency[static_cast<std::size_t>(f)].size()); }
  /// Edge index joining a and b, or -1.
  int find_edge(FactorId a, FactorId b) const;
};

/// All-pairs scope-overlap scan.
FactorNerve build_factor_nerve(const FactorGraph& graph);

enum class SpanningObjective { Maximum, Minimum };
enum class RootRule { MaxDegree, LexicographicFirst };

struct BackboneOptions {
  SpanningObjective objective = SpanningObjective::Maximum;
  RootRule root_rule = RootRule::MaxDegree;
};

/// Spanning forest of the nerve plus its chords, rooted per component.
struct Backbone {
  std::vector<int> tree_edges;  // nerve edge indices, ascending
  std::vector<int> chords;      // nerve edge indices, ascending
  std::vector<FactorId> roots;  // one per component, in order of smallest member
  std::vector<int> component;   // component index of each factor
  std::vector<FactorId> parent; // -1 at roots
  std::vector<int> parent_edge; // nerve edge to parent, -1 at roots
  std::vector<int> depth;
  std::vector<std::vector<FactorId>> children;  // ascending
  int num_components() const { return static_cast<int>(roots.size()); }
};

/// Kruskal spanning forest. Ties in weight go to the lexicographically
/// smaller (u, v).
Backbone backbone(const FactorNerve& nerve, const BackboneOptions& options = {});

/// Backbone over an explicitly chosen forest (edge indices into the nerve).
/// Throws std::invalid_argument if the edges contain a cycle.
Backbone backbone_from_tree_edges(const FactorNerve& nerve, std::vector<int> tree_edges,
                                  const BackboneOptions& options = {});

/// Cycle closed by a chord: factors f_0..f_k with f_0 = chord.v and
/// f_k = chord.u joined by the tree path; interfaces J_i = scope(f_i) ∩
/// scope(f_{i+1}) for i < k and J_k = the chord interface.
struct FundamentalCycle {
  int chord = -1;
  std::vector<FactorId> factors;
  std::vector<std::vector<VarId>> interfaces;
};

FundamentalCycle fundamental_cycle(const FactorNerve& nerve, const Backbone& backbone, int chord);

/// Graphviz rendering: tree edges solid, chords dashed.
std::string nerve_to_dot(const FactorNerve& nerve, const Backbone& backbone);

}  // namespace hatcc
