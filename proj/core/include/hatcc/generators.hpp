#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hatcc/factor_graph.hpp"
#include "hatcc/rng.hpp"

namespace hatcc {

enum class TopologyKind { Cycle, Grid, Random };

struct Topology {
  TopologyKind kind = TopologyKind::Cycle;
  int n = 0;  // vertex count (cycle, random)
  int rows = 0;
  int cols = 0;
  double p = 0.0;  // extra-edge probability (random)

  static Topology cycle(int n) { return {TopologyKind::Cycle, n, 0, 0, 0.0}; }
  static Topology grid(int rows, int cols) { return {TopologyKind::Grid, rows * cols, rows, cols, 0.0}; }
  static Topology random(int n, double p) { return {TopologyKind::Random, n, 0, 0, p}; }

  int vertex_count() const { return n; }
  std::string name() const;
};

/// Edge list with i < j, sorted. Random topologies draw a spanning tree
/// first (each vertex v > 0 attaches to a uniform earlier vertex), then
/// add every other pair with probability p.
std::vector<std::pair<int, int>> topology_edges(const Topology& topology, Rng& rng);

/// Edges outside the BFS tree grown from vertex 0 (neighbors visited in
/// ascending order). Indices into `edges`, ascending.
std::vector<int> off_tree_edges(int n, const std::vector<std::pair<int, int>>& edges);

struct ZkInstance {
  FactorGraph graph;
  int k = 2;
  double eta = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::vector<State> truth;
  std::vector<std::pair<int, int>> edges;  // factor i joins edges[i]
  std::vector<int> shifts;                 // g_ij per edge after corruption
  std::vector<int> corrupted;              // edge indices, ascending
};

/// psi_ij(x_i, x_j) = (1 - eta) [x_j = x_i + g_ij mod k] + eta / k, with
/// g_ij = x*_j - x*_i and ceil(epsilon * #off-tree) off-tree edges shifted
/// by a random nonzero amount.
ZkInstance gen_zk_sync(const Topology& topology, int k, double eta, double epsilon, std::uint64_t seed);

struct PermutationOptions {
  bool consistent = false;      // phi_ij = pi_j o pi_i^-1 for hidden per-vertex pi
  double field_strength = 0.0;  // unary exp(h (2u - 1)) per state when nonzero
};

struct PermutationInstance {
  FactorGraph graph;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> permutations;  // per edge: x_i -> x_j
};

/// Pairwise factors (1 - noise) delta(x_j = phi_ij(x_i)) + noise / d.
PermutationInstance gen_permutation_graph(const Topology& topology, int domain_size, double noise,
                                          std::uint64_t seed, const PermutationOptions& options = {});

/// Binary grid with [[c, 1], [1, c]] couplings and unary [e^h, e^-h],
/// h uniform in [-field_strength, field_strength] (omitted when zero).
FactorGraph gen_grid_mrf(int rows, int cols, double coupling, double field_strength, std::uint64_t seed);

enum class Parity { Odd, Even };

/// Variables A..D (ids 0..3); f1(A,B) copy, f2(B,C) copy, f3(C,D) NOT when
/// odd (copy when even), f4(D,A) copy.
FactorGraph gen_four_cycle(Parity parity);

/// Random factor tree whose factor nerve is also a tree: every variable
/// sits in at most two factors. Scopes have one to three variables and
/// entries are uniform in [0.1, 2].
FactorGraph gen_random_tree(int num_vars, std::uint64_t seed, int cardinality = 2);

/// Binary chain of n - 1 pairwise factors, plus a closing factor
/// (n - 1, 0) when `closed`; random positive entries.
FactorGraph gen_chain(int n, bool closed, std::uint64_t seed);

}  // namespace hatcc
