#include "chainweight/complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "chainweight/errors.hpp"

namespace chainweight {

namespace {

bool same_shape(const ChainComplex& a, const ChainComplex& b) {
  if (!(a.ring() == b.ring())) return false;
  int lo = std::min(a.min_degree(), b.min_degree());
  int hi = std::max(a.max_degree(), b.max_degree());
  for (int i = lo; i <= hi; ++i)
    if (a.rank(i) != b.rank(i)) return false;
  return true;
}

}  // namespace

ChainComplex::ChainComplex(RingSpec ring, int min_degree)
    : ring_(ring), min_(min_degree), diffs_{Matrix(ring, 0, 0)}, zero_(ring, 0, 0) {}

ChainComplex::ChainComplex(RingSpec ring, int min_degree, std::vector<std::size_t> ranks, std::vector<Matrix> diffs)
    : ring_(ring), min_(min_degree), ranks_(std::move(ranks)), zero_(ring, 0, 0) {
  std::size_t n = ranks_.size();
  std::size_t expected = n == 0 ? 0 : n - 1;
  if (diffs.size() != expected)
    throw UsageError("complex with " + std::to_string(n) + " degrees needs " + std::to_string(expected) +
                     " differentials, got " + std::to_string(diffs.size()));
  diffs_.reserve(n + 1);
  diffs_.emplace_back(ring_, 0, n ? ranks_[0] : 0);
  for (std::size_t j = 0; j < diffs.size(); ++j) {
    const Matrix& m = diffs[j];
    require_same_ring(ring_, m.ring(), "complex differential");
    if (m.rows() != ranks_[j] || m.cols() != ranks_[j + 1])
      throw UsageError("differential d_" + std::to_string(min_ + static_cast<int>(j) + 1) + " has shape " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                       std::to_string(ranks_[j]) + "x" + std::to_string(ranks_[j + 1]));
    diffs_.push_back(m);
  }
  if (n) diffs_.emplace_back(ring_, ranks_[n - 1], 0);
}

ChainComplex ChainComplex::concentrated(RingSpec ring, int degree, std::size_t rank) {
  return ChainComplex(ring, degree, {rank}, {});
}

ChainComplex ChainComplex::two_term(int top_degree, const Matrix& d) {
  return ChainComplex(d.ring(), top_degree - 1, {d.rows(), d.cols()}, {d});
}

std::size_t ChainComplex::total_rank() const { return std::accumulate(ranks_.begin(), ranks_.end(), std::size_t{0}); }

const Matrix& ChainComplex::d(int deg) const {
  int k = deg - min_;
  if (k < 0 || k >= static_cast<int>(diffs_.size())) return zero_;
  return diffs_[static_cast<std::size_t>(k)];
}

ChainComplex ChainComplex::trimmed() const {
  int lo = min_, hi = max_degree();
  while (lo <= hi && rank(lo) == 0) ++lo;
  while (hi >= lo && rank(hi) == 0) --hi;
  if (lo > hi) return ChainComplex(ring_, 0);
  std::vector<std::size_t> r;
  std::vector<Matrix> ds;
  for (int i = lo; i <= hi; ++i) {
    r.push_back(rank(i));
    if (i > lo) ds.push_back(d(i));
  }
  return ChainComplex(ring_, lo, std::move(r), std::move(ds));
}

std::string ChainComplex::to_string() const {
  std::ostringstream os;
  os << "ChainComplex over " << ring_.name() << ", degrees [" << min_ << ", " << max_degree() << "], ranks";
  for (auto r : ranks_) os << ' ' << r;
  for (int i = min_ + 1; i <= max_degree(); ++i) os << "\n  d_" << i << " = " << d(i).to_string();
  return os.str();
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
  if (!same_shape(a, b)) return false;
  int lo = std::min(a.min_degree(), b.min_degree());
  int hi = std::max(a.max_degree(), b.max_degree());
  for (int i = lo + 1; i <= hi; ++i)
    if (!(a.d(i) == b.d(i))) return false;
  return true;
}

Diagnostics validate(const ChainComplex& x) {
  for (int i = x.min_degree(); i <= x.max_degree() + 1; ++i) {
    const Matrix& di = x.d(i);
    if (di.rows() != x.rank(i - 1) || di.cols() != x.rank(i))
      return Diagnostics::fail(i, "d_" + std::to_string(i) + " has inconsistent shape");
    if (!(di.ring() == x.ring())) return Diagnostics::fail(i, "d_" + std::to_string(i) + " over the wrong ring");
  }
  for (int i = x.min_degree() + 2; i <= x.max_degree(); ++i) {
    Matrix sq = x.d(i - 1) * x.d(i);
    if (!sq.is_zero())
      return Diagnostics::fail(i, "d_" + std::to_string(i - 1) + " * d_" + std::to_string(i) +
                                      " != 0: " + sq.to_string());
  }
  return Diagnostics::pass();
}

// ---------------------------------------------------------------------------

ChainMap::ChainMap(ChainComplex source, ChainComplex target, const std::function<Matrix(int)>& component)
    : source_(std::move(source)), target_(std::move(target)) {
  require_same_ring(source_.ring(), target_.ring(), "chain map");
  zero_ = Matrix(source_.ring(), 0, 0);
  lo_ = std::min(source_.min_degree(), target_.min_degree());
  int hi = std::max(source_.max_degree(), target_.max_degree());
  for (int i = lo_; i <= hi; ++i) {
    std::size_t rows = target_.rank(i), cols = source_.rank(i);
    if (rows == 0 || cols == 0) {
      components_.emplace_back(source_.ring(), rows, cols);
      continue;
    }
    Matrix m = component(i);
    if (m.rows() != rows || m.cols() != cols)
      throw UsageError("chain map component in degree " + std::to_string(i) + " has shape " +
                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " +
                       std::to_string(rows) + "x" + std::to_string(cols));
    require_same_ring(source_.ring(), m.ring(), "chain map component");
    components_.push_back(std::move(m));
  }
}

ChainMap ChainMap::zero(const ChainComplex& source, const ChainComplex& target) {
  return ChainMap(source, target,
                  [&](int i) { return Matrix(source.ring(), target.rank(i), source.rank(i)); });
}

ChainMap ChainMap::identity(const ChainComplex& x) {
  return ChainMap(x, x, [&](int i) { return Matrix::identity(x.ring(), x.rank(i)); });
}

const Matrix& ChainMap::at(int deg) const {
  int k = deg - lo_;
  if (k < 0 || k >= static_cast<int>(components_.size())) return zero_;
  return components_[static_cast<std::size_t>(k)];
}

bool ChainMap::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Matrix& m) { return m.is_zero(); });
}

ChainMap ChainMap::operator+(const ChainMap& other) const {
  if (!same_shape(source_, other.source_) || !same_shape(target_, other.target_))
    throw UsageError("sum of chain maps with different source/target");
  return ChainMap(source_, target_, [&](int i) { return at(i) + other.at(i); });
}

ChainMap ChainMap::operator-(const ChainMap& other) const { return *this + (-other); }

ChainMap ChainMap::operator-() const {
  return ChainMap(source_, target_, [&](int i) { return -at(i); });
}

bool operator==(const ChainMap& a, const ChainMap& b) {
  if (!(a.source_ == b.source_) || !(a.target_ == b.target_)) return false;
  return a.components_ == b.components_;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!same_shape(f.target(), g.source())) throw UsageError("compose: target of f does not match source of g");
  return ChainMap(f.source(), g.target(), [&](int i) { return g.at(i) * f.at(i); });
}

Diagnostics check_chain_map(const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  int lo = std::min(x.min_degree(), y.min_degree());
  int hi = std::max(x.max_degree(), y.max_degree()) + 1;
  for (int i = lo; i <= hi; ++i) {
    std::size_t rows = y.rank(i - 1), cols = x.rank(i);
    if (rows == 0 || cols == 0) continue;
    Matrix lhs = y.d(i) * f.at(i);
    Matrix rhs = f.at(i - 1) * x.d(i);
    if (!(lhs == rhs))
      return Diagnostics::fail(i, "d f != f d in degree " + std::to_string(i) + ": " + lhs.to_string() + " vs " +
                                      rhs.to_string());
  }
  return Diagnostics::pass();
}

// ---------------------------------------------------------------------------

Homotopy::Homotopy(ChainMap from, ChainMap to, const std::function<Matrix(int)>& component)
    : from_(std::move(from)), to_(std::move(to)) {
  if (!same_shape(from_.source(), to_.source()) || !same_shape(from_.target(), to_.target()))
    throw UsageError("homotopy between maps with different source/target");
  const ChainComplex& x = source();
  const ChainComplex& y = target();
  lo_ = x.min_degree();
  for (int i = x.min_degree(); i <= x.max_degree(); ++i) {
    std::size_t rows = y.rank(i + 1), cols = x.rank(i);
    if (rows == 0 || cols == 0) {
      components_.emplace_back(x.ring(), rows, cols);
      continue;
    }
    Matrix m = component(i);
    if (m.rows() != rows || m.cols() != cols)
      throw UsageError("homotopy component in degree " + std::to_string(i) + " has wrong shape");
    components_.push_back(std::move(m));
  }
}

Matrix Homotopy::at(int deg) const {
  int k = deg - lo_;
  if (k < 0 || k >= static_cast<int>(components_.size()))
    return Matrix(source().ring(), target().rank(deg + 1), source().rank(deg));
  return components_[static_cast<std::size_t>(k)];
}

Diagnostics Homotopy::verify() const {
  const ChainComplex& x = source();
  const ChainComplex& y = target();
  for (int i = x.min_degree(); i <= x.max_degree(); ++i) {
    if (y.rank(i) == 0 || x.rank(i) == 0) continue;
    Matrix lhs = from_.at(i) - to_.at(i);
    Matrix rhs = y.d(i + 1) * at(i) + at(i - 1) * x.d(i);
    if (!(lhs == rhs)) return Diagnostics::fail(i, "f - g != dh + hd in degree " + std::to_string(i));
  }
  return Diagnostics::pass();
}

}  // namespace chainweight
