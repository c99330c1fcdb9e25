#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hatcc {

/// Dense Boolean matrix with each row packed into 64-bit words.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  static BitMatrix identity(std::size_t n);
  static BitMatrix ones(std::size_t rows, std::size_t cols);
  /// Rows given as strings of '0'/'1'.
  static BitMatrix from_rows(const std::vector<std::string>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) {
    auto& w = bits_[r * words_ + c / 64];
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    w = value ? (w | mask) : (w & ~mask);
  }

  /// Boolean product (or of ands); inner dimensions must agree.
  BitMatrix operator*(const BitMatrix& rhs) const;
  BitMatrix transpose() const;
  BitMatrix& operator|=(const BitMatrix& rhs);

  bool is_identity() const;
  bool is_zero() const;
  bool is_permutation() const;
  std::size_t count() const;

  std::string row_string(std::size_t r) const;
  std::vector<std::string> row_strings() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

}  // namespace hatcc
