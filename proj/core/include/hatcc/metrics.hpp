#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hatcc/factor_graph.hpp"
#include "hatcc/holonomy.hpp"
#include "hatcc/sectors.hpp"

namespace hatcc {

using Marginals = std::vector<std::vector<double>>;

/// Mean over variables of half the L1 distance. Throws
/// std::invalid_argument on shape mismatch.
double mean_tv(const Marginals& beliefs, const Marginals& reference);

/// Mean of log p_i(x*_i). Returns -inf when some true state has zero mass,
/// unless `floor` is given, in which case each probability is raised to it.
double mean_log_score(const Marginals& beliefs, const std::vector<State>& truth,
                      std::optional<double> floor = std::nullopt);

int map_hamming(const std::vector<State>& assignment, const std::vector<State>& truth);

/// Argmax of each marginal, smallest state on ties.
std::vector<State> argmax_assignment(const Marginals& beliefs);

struct HolonomySignature {
  int generators = 0;
  int nontrivial_generators = 0;
  std::vector<int> orbit_sizes;   // descending
  std::vector<double> weights;    // descending
  double dominant_weight() const { return weights.empty() ? 0.0 : weights.front(); }
  int max_orbit_size() const { return orbit_sizes.empty() ? 0 : orbit_sizes.front(); }
};

/// From chord holonomies: generators are chords, orbits are modes.
HolonomySignature holonomy_signature(const std::vector<HolonomyReport>& reports);
/// From a sector decomposition: generators, base-fiber orbits and weights.
HolonomySignature holonomy_signature(const SectorResult& sectors);

/// One sweep row; CSV column order is fixed by csv_header().
struct MetricsRow {
  std::string family;
  std::string topology;
  int n = 0;
  int k = 0;
  double eta = 0.0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::string method;
  std::string status;
  bool converged = false;
  bool oscillating = false;
  int iterations = 0;
  double mean_tv = 0.0;
  double mean_log_score = 0.0;
  int map_hamming = 0;
  int nontrivial_generators = 0;
  int orbit_count = 0;
  int max_orbit_size = 0;
  double dominant_weight = 0.0;
  int chords = 0;
};

std::string csv_header();
std::string csv_row(const MetricsRow& row);

}  // namespace hatcc
