#include "hatcc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hatcc {

double mean_tv(const Marginals& beliefs, const Marginals& reference) {
  if (beliefs.size() != reference.size()) throw std::invalid_argument("marginal lists differ in length");
  if (beliefs.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t v = 0; v < beliefs.size(); ++v) {
    if (beliefs[v].size() != reference[v].size()) {
      throw std::invalid_argument("marginal shapes differ at variable " + std::to_string(v));
    }
    double l1 = 0.0;
    for (std::size_t x = 0; x < beliefs[v].size(); ++x) l1 += std::abs(beliefs[v][x] - reference[v][x]);
    total += 0.5 * l1;
  }
  return total / static_cast<double>(beliefs.size());
}

double mean_log_score(const Marginals& beliefs, const std::vector<State>& truth, std::optional<double> floor) {
  if (beliefs.size() != truth.size()) throw std::invalid_argument("truth length differs from marginal count");
  if (beliefs.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t v = 0; v < beliefs.size(); ++v) {
    double p = beliefs[v].at(static_cast<std::size_t>(truth[v]));
    if (floor) p = std::max(p, *floor);
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    total += std::log(p);
  }
  return total / static_cast<double>(beliefs.size());
}

int map_hamming(const std::vector<State>& assignment, const std::vector<State>& truth) {
  if (assignment.size() != truth.size()) throw std::invalid_argument("assignments differ in length");
  int d = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) d += assignment[i] != truth[i];
  return d;
}

std::vector<State> argmax_assignment(const Marginals& beliefs) {
  std::vector<State> out;
  out.reserve(beliefs.size());
  for (const auto& b : beliefs) {
    out.push_back(static_cast<State>(std::max_element(b.begin(), b.end()) - b.begin()));
  }
  return out;
}

HolonomySignature holonomy_signature(const std::vector<HolonomyReport>& reports) {
  HolonomySignature s;
  s.generators = static_cast<int>(reports.size());
  for (const auto& r : reports) {
    if (!r.trivial) ++s.nontrivial_generators;
    for (const auto& m : r.quotient.modes) s.orbit_sizes.push_back(static_cast<int>(m.size()));
  }
  std::sort(s.orbit_sizes.begin(), s.orbit_sizes.end(), std::greater<>());
  return s;
}

HolonomySignature holonomy_signature(const SectorResult& sectors) {
  HolonomySignature s;
  s.generators = static_cast<int>(sectors.generators.size());
  for (const auto& g : sectors.generators) {
    if (!g.is_identity()) ++s.nontrivial_generators;
  }
  for (const auto& o : sectors.orbits) s.orbit_sizes.push_back(static_cast<int>(o.size()));
  for (const auto& run : sectors.sectors) s.weights.push_back(run.weight);
  std::sort(s.orbit_sizes.begin(), s.orbit_sizes.end(), std::greater<>());
  std::sort(s.weights.begin(), s.weights.end(), std::greater<>());
  return s;
}

std::string csv_header() {
  return "family,topology,n,k,eta,eps,seed,method,status,converged,oscillating,iterations,mean_tv,"
         "mean_log_score,map_hamming,nontrivial_generators,orbit_count,max_orbit_size,dominant_weight,chords";
}

std::string csv_row(const MetricsRow& r) {
  std::ostringstream os;
  os.precision(10);
  os << r.family << ',' << r.topology << ',' << r.n << ',' << r.k << ',' << r.eta << ',' << r.eps << ','
     << r.seed << ',' << r.method << ',' << r.status << ',' << (r.converged ? 1 : 0) << ','
     << (r.oscillating ? 1 : 0) << ',' << r.iterations << ',' << r.mean_tv << ',' << r.mean_log_score << ','
     << r.map_hamming << ',' << r.nontrivial_generators << ',' << r.orbit_count << ',' << r.max_orbit_size << ','
     << r.dominant_weight << ',' << r.chords;
  return os.str();
}

}  // namespace hatcc
