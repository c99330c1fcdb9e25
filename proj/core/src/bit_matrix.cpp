#include "hatcc/bit_matrix.hpp"

#include <bit>
#include <stdexcept>

namespace hatcc {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * ((cols + 63) / 64), 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::ones(std::size_t rows, std::size_t cols) {
  BitMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c);
  }
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("ragged bit-matrix rows");
    for (std::size_t c = 0; c < cols; ++c) {
      if (rows[r][c] == '1') {
        m.set(r, c);
      } else if (rows[r][c] != '0') {
        throw std::invalid_argument("bit-matrix rows must contain only 0 and 1");
      }
    }
  }
  return m;
}

BitMatrix BitMatrix::operator*(const BitMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("bit-matrix shapes do not compose");
  BitMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t* dst = &out.bits_[r * out.words_];
    for (std::size_t k = 0; k < cols_; ++k) {
      if (!get(r, k)) continue;
      const std::uint64_t* src = &rhs.bits_[k * rhs.words_];
      for (std::size_t w = 0; w < out.words_; ++w) dst[w] |= src[w];
    }
  }
  return out;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) out.set(c, r);
    }
  }
  return out;
}

BitMatrix& BitMatrix::operator|=(const BitMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("bit-matrix shape mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= rhs.bits_[i];
  return *this;
}

bool BitMatrix::is_identity() const { return rows_ == cols_ && *this == identity(rows_); }

bool BitMatrix::is_zero() const {
  for (auto w : bits_) {
    if (w != 0) return false;
  }
  return true;
}

bool BitMatrix::is_permutation() const {
  if (rows_ != cols_) return false;
  std::vector<int> col_hits(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    int hits = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) {
        ++hits;
        ++col_hits[c];
      }
    }
    if (hits != 1) return false;
  }
  for (int h : col_hits) {
    if (h != 1) return false;
  }
  return true;
}

std::size_t BitMatrix::count() const {
  std::size_t n = 0;
  for (auto w : bits_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::string BitMatrix::row_string(std::size_t r) const {
  std::string s(cols_, '0');
  for (std::size_t c = 0; c < cols_; ++c) {
    if (get(r, c)) s[c] = '1';
  }
  return s;
}

std::vector<std::string> BitMatrix::row_strings() const {
  std::vector<std::string> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_string(r));
  return out;
}

}  // namespace hatcc
