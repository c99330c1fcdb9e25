#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "hatcc/factor_graph.hpp"

namespace hatcc {

// Instance format:
//   { "semiring": "sum_product" | "max_product" | "min_sum" | "boolean",
//     "variables": [ {"id": 0, "cardinality": 2, "label": "A"}, ... ],
//     "factors":   [ {"id": 0, "scope": [0, 1], "table": [...]}, ... ] }
// Tables are row-major, last scope variable fastest. min_sum tables may
// spell +inf as the string "inf".

/// Throws ParseError (naming the field) on schema problems and
/// ValidationError when the decoded graph breaks an invariant.
FactorGraph graph_from_json(const nlohmann::json& doc);
nlohmann::json graph_to_json(const FactorGraph& graph);

FactorGraph parse_graph(const std::string& text);
std::string dump_graph(const FactorGraph& graph);

FactorGraph load_graph(const std::filesystem::path& path);
void save_graph(const FactorGraph& graph, const std::filesystem::path& path);

}  // namespace hatcc
