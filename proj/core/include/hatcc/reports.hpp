#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hatcc/bp_engine.hpp"
#include "hatcc/compile.hpp"
#include "hatcc/holonomy.hpp"
#include "hatcc/oracle.hpp"
#include "hatcc/sectors.hpp"

namespace hatcc {

/// Per-chord row bit-strings, mode sizes and triviality.
nlohmann::json holonomy_to_json(const HolonomyReport& report);
nlohmann::json holonomy_to_json(const std::vector<HolonomyReport>& reports);

nlohmann::json hatcc_to_json(const HatccResult& result);
nlohmann::json bp_to_json(const BpResult& result);
nlohmann::json sectors_to_json(const SectorResult& result);
nlohmann::json oracle_to_json(const ExactMarginals& result);

/// Per-phase wall times in milliseconds.
nlohmann::json timings_to_json(const PhaseTimings& timings);

/// FNV-1a over the canonical text of the holonomy matrices, mode sizes
/// and (when given) base-fiber orbit sizes. Independent of floating point.
std::uint64_t structural_checksum(const std::vector<HolonomyReport>& reports,
                                  const std::vector<std::vector<int>>& orbits = {});
std::string checksum_hex(std::uint64_t checksum);

}  // namespace hatcc
