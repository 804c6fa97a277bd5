#include "chainweight/matrix.hpp"

#include <sstream>
#include <utility>

#include "chainweight/errors.hpp"

namespace chainweight {

Matrix::Matrix(RingSpec ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(RingSpec ring, std::size_t rows, std::size_t cols, std::vector<mpz_class> row_major)
    : ring_(ring), rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols)
    throw UsageError("matrix entry count " + std::to_string(data_.size()) + " != " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  for (auto& x : data_) ring_.reduce(x);
}

Matrix Matrix::identity(RingSpec ring, std::size_t n) {
  Matrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

Matrix Matrix::from_rows(RingSpec ring, std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t nr = rows.size();
  std::size_t nc = nr ? rows.begin()->size() : 0;
  std::vector<mpz_class> data;
  data.reserve(nr * nc);
  for (const auto& row : rows) {
    if (row.size() != nc) throw UsageError("ragged matrix literal");
    for (long x : row) data.emplace_back(x);
  }
  return Matrix(ring, nr, nc, std::move(data));
}

Matrix Matrix::column(RingSpec ring, std::span<const mpz_class> entries) {
  return Matrix(ring, entries.size(), 1, std::vector<mpz_class>(entries.begin(), entries.end()));
}

void Matrix::set(std::size_t r, std::size_t c, mpz_class value) {
  ring_.reduce(value);
  data_[r * cols_ + c] = std::move(value);
}

bool Matrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  require_same_ring(ring_, rhs.ring_, "matrix product");
  if (cols_ != rhs.rows_)
    throw UsageError("matrix product shape mismatch: " + std::to_string(rows_) + "x" + std::to_string(cols_) + " * " +
                     std::to_string(rhs.rows_) + "x" + std::to_string(rhs.cols_));
  Matrix out(ring_, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    mpz_class* orow = out.data_.data() + i * rhs.cols_;
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = data_[i * cols_ + k];
      if (a == 0) continue;
      const mpz_class* brow = rhs.data_.data() + k * rhs.cols_;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        if (brow[j] != 0) mpz_addmul(orow[j].get_mpz_t(), a.get_mpz_t(), brow[j].get_mpz_t());
    }
  }
  if (ring_.is_field())
    for (auto& x : out.data_) ring_.reduce(x);
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  require_same_ring(ring_, rhs.ring_, "matrix sum");
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw UsageError("matrix sum shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    out.data_[i] += rhs.data_[i];
    ring_.reduce(out.data_[i]);
  }
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const { return *this + (-rhs); }

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (auto& x : out.data_) {
    x = -x;
    ring_.reduce(x);
  }
  return out;
}

Matrix Matrix::scaled(const mpz_class& factor) const {
  Matrix out = *this;
  for (auto& x : out.data_) {
    x *= factor;
    ring_.reduce(x);
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(ring_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.data_[c * rows_ + r] = (*this)(r, c);
  return out;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw UsageError("matrix block out of range");
  Matrix out(ring_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out.data_[r * nc + c] = (*this)(r0 + r, c0 + c);
  return out;
}

Matrix Matrix::select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const {
  Matrix out(ring_, row_idx.size(), col_idx.size());
  for (std::size_t r = 0; r < row_idx.size(); ++r)
    for (std::size_t c = 0; c < col_idx.size(); ++c) out.data_[r * col_idx.size() + c] = (*this)(row_idx[r], col_idx[c]);
  return out;
}

void Matrix::paste(std::size_t r0, std::size_t c0, const Matrix& m) {
  if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) throw UsageError("matrix paste out of range");
  for (std::size_t r = 0; r < m.rows_; ++r)
    for (std::size_t c = 0; c < m.cols_; ++c) data_[(r0 + r) * cols_ + c0 + c] = m(r, c);
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring_, b.ring_, "hstack");
  if (a.rows_ != b.rows_) throw UsageError("hstack row mismatch");
  Matrix out(a.ring_, a.rows_, a.cols_ + b.cols_);
  out.paste(0, 0, a);
  out.paste(0, a.cols_, b);
  return out;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring_, b.ring_, "vstack");
  if (a.cols_ != b.cols_) throw UsageError("vstack column mismatch");
  Matrix out(a.ring_, a.rows_ + b.rows_, a.cols_);
  out.paste(0, 0, a);
  out.paste(a.rows_, 0, b);
  return out;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
  require_same_ring(a.ring_, b.ring_, "block_diag");
  Matrix out(a.ring_, a.rows_ + b.rows_, a.cols_ + b.cols_);
  out.paste(0, 0, a);
  out.paste(a.rows_, a.cols_, b);
  return out;
}

void Matrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
}

void Matrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap(data_[r * cols_ + a], data_[r * cols_ + b]);
}

void Matrix::add_row_multiple(std::size_t dst, std::size_t src, const mpz_class& factor, std::size_t from) {
  if (factor == 0) return;
  mpz_class* d = data_.data() + dst * cols_;
  const mpz_class* s = data_.data() + src * cols_;
  for (std::size_t c = from; c < cols_; ++c) {
    if (s[c] == 0) continue;
    mpz_addmul(d[c].get_mpz_t(), factor.get_mpz_t(), s[c].get_mpz_t());
    ring_.reduce(d[c]);
  }
}

void Matrix::add_col_multiple(std::size_t dst, std::size_t src, const mpz_class& factor, std::size_t from) {
  if (factor == 0) return;
  for (std::size_t r = from; r < rows_; ++r) {
    const mpz_class& s = data_[r * cols_ + src];
    if (s == 0) continue;
    mpz_class& d = data_[r * cols_ + dst];
    mpz_addmul(d.get_mpz_t(), factor.get_mpz_t(), s.get_mpz_t());
    ring_.reduce(d);
  }
}

void Matrix::scale_row(std::size_t r, const mpz_class& factor) {
  for (std::size_t c = 0; c < cols_; ++c) {
    data_[r * cols_ + c] *= factor;
    ring_.reduce(data_[r * cols_ + c]);
  }
}

void Matrix::scale_col(std::size_t c, const mpz_class& factor) {
  for (std::size_t r = 0; r < rows_; ++r) {
    data_[r * cols_ + c] *= factor;
    ring_.reduce(data_[r * cols_ + c]);
  }
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

}  // namespace chainweight
