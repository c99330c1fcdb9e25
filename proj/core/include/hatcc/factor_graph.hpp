#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hatcc/errors.hpp"
#include "hatcc/semiring.hpp"

namespace hatcc {

using VarId = int;
using FactorId = int;
using State = int;

struct VariableDecl {
  VarId id = 0;
  int cardinality = 1;
  std::string label;

  friend bool operator==(const VariableDecl&, const VariableDecl&) = default;
};

/// A factor over an ordered scope. The table is row-major with the LAST
/// scope variable varying fastest.
struct FactorDecl {
  FactorId id = 0;
  std::vector<VarId> scope;
  std::vector<double> table;

  friend bool operator==(const FactorDecl&, const FactorDecl&) = default;
};

struct FactorGraph {
  Semiring semiring;
  std::vector<VariableDecl> variables;
  std::vector<FactorDecl> factors;

  std::size_t num_variables() const { return variables.size(); }
  std::size_t num_factors() const { return factors.size(); }
  int cardinality(VarId v) const { return variables[static_cast<std::size_t>(v)].cardinality; }
  std::vector<int> cardinalities(std::span<const VarId> scope) const;

  /// Factor ids adjacent to each variable, ascending.
  std::vector<std::vector<FactorId>> variable_neighbors() const;

  friend bool operator==(const FactorGraph&, const FactorGraph&) = default;
};

/// A table over an explicit scope, used for beliefs, restrictions and
/// cluster potentials. Same addressing as FactorDecl.
struct PotentialSlice {
  std::vector<VarId> scope;
  std::vector<int> cardinalities;
  std::vector<double> table;

  friend bool operator==(const PotentialSlice&, const PotentialSlice&) = default;
};

enum class ViolationKind {
  NonContiguousVariableId,
  BadCardinality,
  NonContiguousFactorId,
  EmptyScope,
  UnknownVariable,
  DuplicateScopeVariable,
  TableLengthMismatch,
  InvalidEntry,
};

struct Violation {
  ViolationKind kind;
  int variable_id = -1;
  int factor_id = -1;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Checks every structural invariant; an empty result means the graph is
/// well formed.
std::vector<Violation> validate(const FactorGraph& graph);

/// Throws ValidationError listing all violations.
void require_valid(const FactorGraph& graph);

/// Product of cardinalities. Throws CapacityError above `cap`.
std::size_t state_space_size(std::span<const int> cardinalities,
                             std::size_t cap = SIZE_MAX);

/// Row-major strides with the last coordinate fastest.
std::vector<std::size_t> strides_for(std::span<const int> cardinalities);

/// Advances a mixed-radix counter (last digit fastest). Returns false after
/// wrapping past the final state.
bool next_assignment(std::span<State> digits, std::span<const int> cardinalities);

/// Product over all factors of the factor value at the assignment.
double joint_weight(const FactorGraph& graph, std::span<const State> assignment);

PotentialSlice factor_slice(const FactorGraph& graph, FactorId f);

/// Eliminates every scope variable outside `target_scope` with the
/// semiring's add. The result scope is `target_scope` in ascending id order.
/// Throws std::invalid_argument when target is not a subset of the scope.
PotentialSlice restrict_to(const PotentialSlice& slice, std::span<const VarId> target_scope,
                           Semiring semiring);

/// Same function with its scope permuted into ascending id order.
PotentialSlice canonicalize(const PotentialSlice& slice);

/// target(x) <- target(x) * factor(x restricted to factor.scope). The
/// factor's scope must be a subset of the target's.
void multiply_in(PotentialSlice& target, const PotentialSlice& factor, Semiring semiring);

/// Add-fold of the values (sum, max, min or or).
double semiring_total(std::span<const double> values, Semiring semiring);

/// Rescales in place so that the add-fold equals one: divide by the sum
/// (sum_product) or max (max_product), subtract the min (min_sum), no-op
/// for boolean. Returns the removed scale, or semiring.zero() when the
/// values are all zero (the vector is then left unchanged).
double normalize_in_place(std::span<double> values, Semiring semiring);

/// Builds the 0..n-1 variable list with the given cardinalities.
std::vector<VariableDecl> make_variables(std::span<const int> cardinalities);

}  // namespace hatcc
