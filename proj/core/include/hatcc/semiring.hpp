#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace hatcc {

enum class SemiringKind { SumProduct, MaxProduct, MinSum, Boolean };

/// Commutative semiring over doubles. Elements are plain doubles; the kind
/// selects (add, mul, zero, one).
///
///   sum_product  (+, *, 0, 1)
///   max_product  (max, *, 0, 1)
///   min_sum      (min, +, +inf, 0)
///   boolean      (or, and, 0, 1)
class Semiring {
 public:
  constexpr Semiring() = default;
  constexpr explicit Semiring(SemiringKind kind) : kind_(kind) {}

  static constexpr Semiring sum_product() { return Semiring(SemiringKind::SumProduct); }
  static constexpr Semiring max_product() { return Semiring(SemiringKind::MaxProduct); }
  static constexpr Semiring min_sum() { return Semiring(SemiringKind::MinSum); }
  static constexpr Semiring boolean() { return Semiring(SemiringKind::Boolean); }

  constexpr SemiringKind kind() const { return kind_; }

  double add(double a, double b) const {
    switch (kind_) {
      case SemiringKind::SumProduct: return a + b;
      case SemiringKind::MaxProduct: return a > b ? a : b;
      case SemiringKind::MinSum: return a < b ? a : b;
      case SemiringKind::Boolean: return (a != 0.0 || b != 0.0) ? 1.0 : 0.0;
    }
    return a + b;
  }

  double mul(double a, double b) const {
    switch (kind_) {
      case SemiringKind::SumProduct:
      case SemiringKind::MaxProduct: return a * b;
      case SemiringKind::MinSum: return a + b;
      case SemiringKind::Boolean: return (a != 0.0 && b != 0.0) ? 1.0 : 0.0;
    }
    return a * b;
  }

  double zero() const {
    return kind_ == SemiringKind::MinSum ? std::numeric_limits<double>::infinity() : 0.0;
  }
  double one() const { return kind_ == SemiringKind::MinSum ? 0.0 : 1.0; }

  /// Support test. With tolerance 0 this is an exact comparison against
  /// zero(). A positive tolerance treats entries with |v| <= tolerance as
  /// zero for the multiplicative semirings; min_sum only treats +inf as zero.
  bool is_zero(double v, double tolerance = 0.0) const {
    if (kind_ == SemiringKind::MinSum) return v == zero();
    if (tolerance > 0.0) return std::abs(v) <= tolerance;
    return v == 0.0;
  }

  /// True when mul has inverses on nonzero elements, which normalization
  /// under sum_product / max_product relies on. min_sum normalizes by
  /// subtraction; boolean never normalizes.
  bool supports_division() const {
    return kind_ == SemiringKind::SumProduct || kind_ == SemiringKind::MaxProduct ||
           kind_ == SemiringKind::MinSum;
  }

  /// Whether v is a legal element (nonnegative for the probabilistic
  /// semirings, {0,1} for boolean, anything but -inf/NaN for min_sum).
  bool is_valid(double v) const {
    if (std::isnan(v)) return false;
    switch (kind_) {
      case SemiringKind::SumProduct:
      case SemiringKind::MaxProduct: return v >= 0.0 && std::isfinite(v);
      case SemiringKind::MinSum: return v != -std::numeric_limits<double>::infinity();
      case SemiringKind::Boolean: return v == 0.0 || v == 1.0;
    }
    return false;
  }

  /// Divides a by the scale s (mul-inverse). Only meaningful when
  /// supports_division() and s is nonzero.
  double unscale(double a, double s) const {
    if (kind_ == SemiringKind::MinSum) return a - s;
    return a / s;
  }

  std::string_view name() const {
    switch (kind_) {
      case SemiringKind::SumProduct: return "sum_product";
      case SemiringKind::MaxProduct: return "max_product";
      case SemiringKind::MinSum: return "min_sum";
      case SemiringKind::Boolean: return "boolean";
    }
    return "sum_product";
  }

  static std::optional<Semiring> from_name(std::string_view name) {
    if (name == "sum_product") return sum_product();
    if (name == "max_product") return max_product();
    if (name == "min_sum") return min_sum();
    if (name == "boolean") return boolean();
    return std::nullopt;
  }

  friend constexpr bool operator==(Semiring a, Semiring b) { return a.kind_ == b.kind_; }

 private:
  SemiringKind kind_ = SemiringKind::SumProduct;
};

}  // namespace hatcc
