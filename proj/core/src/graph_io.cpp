#include "hatcc/graph_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace hatcc {

using nlohmann::json;

namespace {

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key, "missing required field");
  return *it;
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ParseError(path, "expected an integer");
  const auto x = v.get<long long>();
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    throw ParseError(path, "integer out of range");
  }
  return static_cast<int>(x);
}

double as_value(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "inf" || s == "+inf" || s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-inf" || s == "-Infinity") return -std::numeric_limits<double>::infinity();
  }
  throw ParseError(path, "expected a number");
}

json value_to_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

}  // namespace

FactorGraph graph_from_json(const json& doc) {
  FactorGraph g;
  const auto& sr = require(doc, "semiring", "$");
  if (!sr.is_string()) throw ParseError("$.semiring", "expected a string");
  auto kind = Semiring::from_name(sr.get<std::string>());
  if (!kind) throw ParseError("$.semiring", "unknown semiring '" + sr.get<std::string>() + "'");
  g.semiring = *kind;

  const auto& vars = require(doc, "variables", "$");
  if (!vars.is_array()) throw ParseError("$.variables", "expected an array");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::string path = "$.variables[" + std::to_string(i) + "]";
    VariableDecl v;
    v.id = as_int(require(vars[i], "id", path), path + ".id");
    v.cardinality = as_int(require(vars[i], "cardinality", path), path + ".cardinality");
    if (auto it = vars[i].find("label"); it != vars[i].end() && !it->is_null()) {
      if (!it->is_string()) throw ParseError(path + ".label", "expected a string");
      v.label = it->get<std::string>();
    }
    g.variables.push_back(std::move(v));
  }

  const auto& facs = require(doc, "factors", "$");
  if (!facs.is_array()) throw ParseError("$.factors", "expected an array");
  for (std::size_t i = 0; i < facs.size(); ++i) {
    const std::string path = "$.factors[" + std::to_string(i) + "]";
    FactorDecl f;
    f.id = as_int(require(facs[i], "id", path), path + ".id");
    const auto& scope = require(facs[i], "scope", path);
    if (!scope.is_array()) throw ParseError(path + ".scope", "expected an array");
    for (std::size_t j = 0; j < scope.size(); ++j) {
      f.scope.push_back(as_int(scope[j], path + ".scope[" + std::to_string(j) + "]"));
    }
    const auto& table = require(facs[i], "table", path);
    if (!table.is_array()) throw ParseError(path + ".table", "expected an array");
    f.table.reserve(table.size());
    for (std::size_t j = 0; j < table.size(); ++j) {
      f.table.push_back(as_value(table[j], path + ".table[" + std::to_string(j) + "]"));
    }
    g.factors.push_back(std::move(f));
  }
  require_valid(g);
  return g;
}

json graph_to_json(const FactorGraph& graph) {
  json vars = json::array();
  for (const auto& v : graph.variables) {
    json entry = {{"id", v.id}, {"cardinality", v.cardinality}};
    if (!v.label.empty()) entry["label"] = v.label;
    vars.push_back(std::move(entry));
  }
  json facs = json::array();
  for (const auto& f : graph.factors) {
    json table = json::array();
    for (double x : f.table) table.push_back(value_to_json(x));
    facs.push_back({{"id", f.id}, {"scope", f.scope}, {"table", std::move(table)}});
  }
  return {{"semiring", std::string(graph.semiring.name())},
          {"variables", std::move(vars)},
          {"factors", std::move(facs)}};
}

FactorGraph parse_graph(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte)), e.what());
  }
  return graph_from_json(doc);
}

std::string dump_graph(const FactorGraph& graph) { return graph_to_json(graph).dump(2) + "\n"; }

FactorGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

void save_graph(const FactorGraph& graph, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << dump_graph(graph);
}

}  // namespace hatcc
