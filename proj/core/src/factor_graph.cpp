#include "hatcc/factor_graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hatcc {

namespace {

std::string summarize(const std::vector<Violation>& violations) {
  std::ostringstream os;
  os << violations.size() << " validation error(s)";
  for (const auto& v : violations) os << "\n  " << v.message;
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

std::vector<int> FactorGraph::cardinalities(std::span<const VarId> scope) const {
  std::vector<int> out;
  out.reserve(scope.size());
  for (VarId v : scope) out.push_back(cardinality(v));
  return out;
}

std::vector<std::vector<FactorId>> FactorGraph::variable_neighbors() const {
  std::vector<std::vector<FactorId>> nbrs(variables.size());
  for (const auto& f : factors) {
    for (VarId v : f.scope) nbrs[static_cast<std::size_t>(v)].push_back(f.id);
  }
  return nbrs;
}

std::vector<Violation> validate(const FactorGraph& graph) {
  std::vector<Violation> out;
  const int n = static_cast<int>(graph.variables.size());
  for (int i = 0; i < n; ++i) {
    const auto& var = graph.variables[static_cast<std::size_t>(i)];
    if (var.id != i) {
      out.push_back({ViolationKind::NonContiguousVariableId, var.id, -1,
                     "variable at position " + std::to_string(i) + " has id " +
                         std::to_string(var.id) + " (ids must be 0..|V|-1)"});
    }
    if (var.cardinality < 1) {
      out.push_back({ViolationKind::BadCardinality, var.id, -1,
                     "variable " + std::to_string(var.id) + " has cardinality " +
                         std::to_string(var.cardinality)});
    }
  }
  for (std::size_t fi = 0; fi < graph.factors.size(); ++fi) {
    const auto& f = graph.factors[fi];
    const std::string tag = "factor " + std::to_string(f.id);
    if (f.id != static_cast<int>(fi)) {
      out.push_back({ViolationKind::NonContiguousFactorId, -1, f.id,
                     tag + " at position " + std::to_string(fi) + " (ids must be 0..|F|-1)"});
    }
    if (f.scope.empty()) {
      out.push_back({ViolationKind::EmptyScope, -1, f.id, tag + " has an empty scope"});
      continue;
    }
    bool scope_ok = true;
    for (VarId v : f.scope) {
      if (v < 0 || v >= n) {
        out.push_back({ViolationKind::UnknownVariable, v, f.id,
                       tag + " references unknown variable " + std::to_string(v)});
        scope_ok = false;
      }
    }
    std::vector<VarId> sorted = f.scope;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      out.push_back({ViolationKind::DuplicateScopeVariable, *std::adjacent_find(sorted.begin(), sorted.end()),
                     f.id, tag + " lists a variable twice in its scope"});
      scope_ok = false;
    }
    if (scope_ok) {
      bool cards_ok = true;
      std::size_t expected = 1;
      for (VarId v : f.scope) {
        const int c = graph.cardinality(v);
        if (c < 1) { cards_ok = false; break; }
        expected *= static_cast<std::size_t>(c);
      }
      if (cards_ok && expected != f.table.size()) {
        out.push_back({ViolationKind::TableLengthMismatch, -1, f.id,
                       tag + " table has length " + std::to_string(f.table.size()) + ", expected " +
                           std::to_string(expected)});
      }
    }
    for (std::size_t i = 0; i < f.table.size(); ++i) {
      if (!graph.semiring.is_valid(f.table[i])) {
        std::ostringstream os;
        os << tag << " entry " << i << " = " << f.table[i] << " is not a valid "
           << graph.semiring.name() << " value";
        out.push_back({ViolationKind::InvalidEntry, -1, f.id, os.str()});
        break;
      }
    }
  }
  return out;
}

void require_valid(const FactorGraph& graph) {
  auto violations = validate(graph);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

std::size_t state_space_size(std::span<const int> cardinalities, std::size_t cap) {
  std::size_t total = 1;
  for (int c : cardinalities) {
    const auto uc = static_cast<std::size_t>(c);
    if (uc != 0 && total > cap / uc) {
      throw CapacityError("state space exceeds cap of " + std::to_string(cap));
    }
    total *= uc;
  }
  if (total > cap) throw CapacityError("state space exceeds cap of " + std::to_string(cap));
  return total;
}

std::vector<std::size_t> strides_for(std::span<const int> cardinalities) {
  std::vector<std::size_t> strides(cardinalities.size(), 1);
  for (std::size_t i = cardinalities.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * static_cast<std::size_t>(cardinalities[i]);
  }
  return strides;
}

bool next_assignment(std::span<State> digits, std::span<const int> cardinalities) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < cardinalities[i]) return true;
    digits[i] = 0;
  }
  return false;
}

double joint_weight(const FactorGraph& graph, std::span<const State> assignment) {
  if (assignment.size() != graph.num_variables()) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.size()) +
                                " entries, graph has " + std::to_string(graph.num_variables()) +
                                " variables");
  }
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    if (assignment[v] < 0 || assignment[v] >= graph.variables[v].cardinality) {
      throw std::out_of_range("state " + std::to_string(assignment[v]) + " out of range for variable " +
                              std::to_string(v));
    }
  }
  const Semiring sr = graph.semiring;
  double w = sr.one();
  for (const auto& f : graph.factors) {
    std::size_t idx = 0;
    for (VarId v : f.scope) {
      idx = idx * static_cast<std::size_t>(graph.cardinality(v)) +
            static_cast<std::size_t>(assignment[static_cast<std::size_t>(v)]);
    }
    w = sr.mul(w, f.table[idx]);
  }
  return w;
}

PotentialSlice factor_slice(const FactorGraph& graph, FactorId f) {
  const auto& decl = graph.factors.at(static_cast<std::size_t>(f));
  return PotentialSlice{decl.scope, graph.cardinalities(decl.scope), decl.table};
}

PotentialSlice restrict_to(const PotentialSlice& slice, std::span<const VarId> target_scope,
                           Semiring semiring) {
  std::vector<VarId> target(target_scope.begin(), target_scope.end());
  std::sort(target.begin(), target.end());
  if (std::adjacent_find(target.begin(), target.end()) != target.end()) {
    throw std::invalid_argument("restrict_to: duplicate variable in target scope");
  }
  // position in the source scope of each target variable
  std::vector<std::size_t> source_pos;
  source_pos.reserve(target.size());
  for (VarId v : target) {
    auto it = std::find(slice.scope.begin(), slice.scope.end(), v);
    if (it == slice.scope.end()) {
      throw std::invalid_argument("restrict_to: variable " + std::to_string(v) +
                                  " is not in the source scope");
    }
    source_pos.push_back(static_cast<std::size_t>(it - slice.scope.begin()));
  }

  PotentialSlice out;
  out.scope = target;
  out.cardinalities.reserve(target.size());
  for (std::size_t p : source_pos) out.cardinalities.push_back(slice.cardinalities[p]);
  const auto out_strides = strides_for(out.cardinalities);
  std::size_t out_size = 1;
  for (int c : out.cardinalities) out_size *= static_cast<std::size_t>(c);
  out.table.assign(out_size, semiring.zero());

  // stride contribution of each source coordinate in the output table
  std::vector<std::size_t> contrib(slice.scope.size(), 0);
  for (std::size_t t = 0; t < source_pos.size(); ++t) contrib[source_pos[t]] = out_strides[t];

  std::vector<State> digits(slice.scope.size(), 0);
  std::size_t out_idx = 0;
  for (std::size_t idx = 0; idx < slice.table.size(); ++idx) {
    out.table[out_idx] = semiring.add(out.table[out_idx], slice.table[idx]);
    // odometer step keeping out_idx in sync
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < slice.cardinalities[i]) {
        out_idx += contrib[i];
        break;
      }
      out_idx -= contrib[i] * static_cast<std::size_t>(slice.cardinalities[i] - 1);
      digits[i] = 0;
    }
  }
  return out;
}

PotentialSlice canonicalize(const PotentialSlice& slice) {
  if (std::is_sorted(slice.scope.begin(), slice.scope.end())) return slice;
  // restricting to the full scope only permutes, regardless of semiring
  return restrict_to(slice, slice.scope, Semiring::sum_product());
}

void multiply_in(PotentialSlice& target, const PotentialSlice& factor, Semiring semiring) {
  const auto factor_strides = strides_for(factor.cardinalities);
  std::vector<std::size_t> contrib(target.scope.size(), 0);
  for (std::size_t j = 0; j < factor.scope.size(); ++j) {
    auto it = std::find(target.scope.begin(), target.scope.end(), factor.scope[j]);
    if (it == target.scope.end()) {
      throw std::invalid_argument("multiply_in: factor scope is not a subset of the target scope");
    }
    contrib[static_cast<std::size_t>(it - target.scope.begin())] = factor_strides[j];
  }
  std::vector<State> digits(target.scope.size(), 0);
  std::size_t f_idx = 0;
  for (std::size_t idx = 0; idx < target.table.size(); ++idx) {
    target.table[idx] = semiring.mul(target.table[idx], factor.table[f_idx]);
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < target.cardinalities[i]) {
        f_idx += contrib[i];
        break;
      }
      f_idx -= contrib[i] * static_cast<std::size_t>(target.cardinalities[i] - 1);
      digits[i] = 0;
    }
  }
}

double semiring_total(std::span<const double> values, Semiring semiring) {
  double acc = semiring.zero();
  for (double v : values) acc = semiring.add(acc, v);
  return acc;
}

double normalize_in_place(std::span<double> values, Semiring semiring) {
  const double total = semiring_total(values, semiring);
  if (semiring.is_zero(total)) return semiring.zero();
  if (semiring.kind() == SemiringKind::Boolean) return semiring.one();
  for (double& v : values) v = semiring.unscale(v, total);
  return total;
}

std::vector<VariableDecl> make_variables(std::span<const int> cardinalities) {
  std::vector<VariableDecl> vars;
  vars.reserve(cardinalities.size());
  for (std::size_t i = 0; i < cardinalities.size(); ++i) {
    vars.push_back({static_cast<VarId>(i), cardinalities[i], {}});
  }
  return vars;
}

}  // namespace hatcc
