#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "chainweight/ring.hpp"

namespace chainweight {

/// Dense row-major matrix of exact scalars over a RingSpec. Entries are kept
/// reduced over 𝔽_p. Shapes with a zero dimension are legal and common: the
/// differential out of the lowest degree of a complex is 0 × rank.
class Matrix {
 public:
  Matrix() = default;
  Matrix(RingSpec ring, std::size_t rows, std::size_t cols);
  /// Entries in row-major order; reduced on construction.
  Matrix(RingSpec ring, std::size_t rows, std::size_t cols, std::vector<mpz_class> row_major);

  static Matrix identity(RingSpec ring, std::size_t n);
  static Matrix from_rows(RingSpec ring, std::initializer_list<std::initializer_list<long>> rows);
  static Matrix column(RingSpec ring, std::span<const mpz_class> entries);

  const RingSpec& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, mpz_class value);
  const std::vector<mpz_class>& entries() const { return data_; }

  bool is_zero() const;
  bool is_identity() const;

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator-() const;
  Matrix scaled(const mpz_class& factor) const;
  Matrix transpose() const;

  /// Rows [r0, r0+nr) and columns [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  /// Arbitrary row and column selections, in the given order.
  Matrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  Matrix col(std::size_t c) const { return block(0, c, rows_, 1); }
  /// Writes `m` with its top-left corner at (r0, c0).
  void paste(std::size_t r0, std::size_t c0, const Matrix& m);

  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);
  static Matrix block_diag(const Matrix& a, const Matrix& b);

  // In-place elementary operations. `from` restricts the touched range to
  // indices >= from, which callers use when the prefix is known to be zero.
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& factor, std::size_t from = 0);
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& factor, std::size_t from = 0);
  void scale_row(std::size_t r, const mpz_class& factor);
  void scale_col(std::size_t c, const mpz_class& factor);

  std::string to_string() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  RingSpec ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

}  // namespace chainweight
