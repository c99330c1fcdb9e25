#include "hatcc/reports.hpp"

#include <cmath>
#include <cstdio>

namespace hatcc {

using nlohmann::json;

namespace {

// JSON has no infinities; spell them out.
json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

json marginals_json(const std::vector<std::vector<double>>& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (double x : row) r.push_back(number(x));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

json holonomy_to_json(const HolonomyReport& r) {
  json modes = json::array();
  for (const auto& m : r.quotient.modes) modes.push_back(m.size());
  return {{"chord", {r.u, r.v}},
          {"interface", r.interface},
          {"cycle", r.cycle.factors},
          {"matrix", r.matrix.row_strings()},
          {"mode_sizes", modes},
          {"trivial", r.trivial}};
}

json holonomy_to_json(const std::vector<HolonomyReport>& reports) {
  json out = json::array();
  for (const auto& r : reports) out.push_back(holonomy_to_json(r));
  return out;
}

json timings_to_json(const PhaseTimings& t) {
  return {{"nerve", t.nerve_ms},       {"backbone", t.backbone_ms},   {"holonomy", t.holonomy_ms},
          {"modes", t.modes_ms},       {"augment", t.augment_ms},     {"propagate", t.propagate_ms},
          {"marginalize", t.marginalize_ms}, {"total", t.total_ms()}};
}

json hatcc_to_json(const HatccResult& r) {
  json out;
  out["status"] = r.status == HatccStatus::Ok ? "ok" : "unsat";
  out["Z"] = number(r.z);
  out["log_Z"] = number(r.log_z);
  out["marginals"] = marginals_json(r.marginals);
  out["holonomy"] = holonomy_to_json(r.reports);
  out["tree_fast_path"] = r.tree_fast_path;
  out["running_intersection"] = r.diagnostics.running_intersection;
  out["exactness_certified"] = r.diagnostics.exactness_certified;
  out["warnings"] = r.diagnostics.warnings;
  if (r.unsat) {
    json cert = {{"reason", r.unsat->reason}};
    if (r.unsat->chord >= 0) {
      cert["chord"] = {r.unsat->u, r.unsat->v};
      cert["interface"] = r.unsat->interface;
      json sel = json::array();
      for (double x : r.unsat->selector.table) sel.push_back(number(x));
      cert["selector"] = sel;
    }
    out["certificate"] = cert;
  }
  out["timings"] = timings_to_json(r.timings);
  return out;
}

json bp_to_json(const BpResult& r) {
  json trace = json::array();
  for (double x : r.residual_trace) trace.push_back(number(x));
  json degenerate = json::array();
  for (std::size_t v = 0; v < r.beliefs.degenerate.size(); ++v) {
    if (r.beliefs.degenerate[v]) degenerate.push_back(v);
  }
  return {{"status", r.beliefs.any_degenerate() ? "degenerate" : "ok"},
          {"converged", r.converged},
          {"oscillating", r.oscillating},
          {"period", r.period},
          {"iterations", r.iterations},
          {"marginals", marginals_json(r.beliefs.marginals)},
          {"degenerate_variables", degenerate},
          {"residual_trace", trace}};
}

json sectors_to_json(const SectorResult& r) {
  json sectors = json::array();
  for (const auto& s : r.sectors) {
    sectors.push_back({{"orbit", s.orbit},
                       {"log_evidence", number(s.log_evidence)},
                       {"weight", s.weight},
                       {"converged", s.converged},
                       {"iterations", s.iterations},
                       {"final_residual", number(s.final_residual)}});
  }
  json gens = json::array();
  for (const auto& g : r.generators) gens.push_back(g.row_strings());
  json out = {{"status", r.unsat ? "unsat" : "ok"},
              {"mode", r.mode == SectorMode::SectorBp ? "sector_bp" : "decomposition_only"},
              {"base", r.base},
              {"generators", gens},
              {"orbits", r.orbits},
              {"sectors", sectors}};
  if (!r.unsat) out["marginals"] = marginals_json(r.marginals);
  return out;
}

json oracle_to_json(const ExactMarginals& r) {
  json out = {{"status", r.unsat ? "unsat" : "ok"}, {"Z", number(r.z)}};
  if (!r.unsat) out["marginals"] = marginals_json(r.marginals);
  return out;
}

std::uint64_t structural_checksum(const std::vector<HolonomyReport>& reports,
                                  const std::vector<std::vector<int>>& orbits) {
  std::string text;
  for (const auto& r : reports) {
    text += std::to_string(r.u) + "-" + std::to_string(r.v) + ":";
    for (const auto& row : r.matrix.row_strings()) text += row + "/";
    for (const auto& m : r.quotient.modes) text += std::to_string(m.size()) + ",";
    text += r.trivial ? "T;" : "N;";
  }
  text += "|";
  for (const auto& o : orbits) text += std::to_string(o.size()) + ",";
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string checksum_hex(std::uint64_t checksum) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(checksum));
  return buf;
}

}  // namespace hatcc
