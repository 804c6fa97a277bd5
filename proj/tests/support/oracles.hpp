#pragma once

// Independent reference computations used only by the tests. None of these
// go through the Smith reduction in the library.

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "chainweight/homology.hpp"
#include "chainweight/matrix.hpp"

namespace oracle {

using chainweight::Matrix;
using chainweight::ModulePresentation;
using chainweight::HomologyProfile;

using QMatrix = std::vector<std::vector<mpq_class>>;

inline QMatrix to_rational(const Matrix& m) {
  QMatrix q(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) q[r][c] = mpq_class(m(r, c));
  return q;
}

// Reduced row echelon form over ℚ, or over 𝔽_p when p != 0; returns the rank.
inline std::size_t row_reduce(QMatrix& a, unsigned long p = 0) {
  std::size_t rows = a.size(), cols = rows ? a[0].size() : 0, rank = 0;
  auto norm = [p](mpq_class& x) {
    if (p == 0) return;
    mpz_class num = x.get_num(), den = x.get_den(), inv;
    mpz_class mod = p;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
    mpz_class v = num * inv;
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), mod.get_mpz_t());
    x = v;
  };
  for (auto& row : a)
    for (auto& x : row) norm(x);
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    mpq_class inv = 1 / a[rank][c];
    norm(inv);
    for (auto& x : a[rank]) {
      x *= inv;
      norm(x);
    }
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      mpq_class f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) {
        a[r][k] -= f * a[rank][k];
        norm(a[r][k]);
      }
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank(const Matrix& m) {
  QMatrix q = to_rational(m);
  return row_reduce(q, m.ring().is_field() ? m.ring().modulus() : 0);
}

// Whether M x = b has a solution over ℚ (columns of b treated together).
inline bool solvable_over_q(const Matrix& m, const Matrix& b) {
  return oracle::rank(m) == oracle::rank(Matrix::hstack(m, b));
}

// Fraction-free determinant (Bareiss), integer matrices only.
inline mpz_class determinant(const Matrix& m) {
  std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) a[r][c] = m(r, c);
  mpz_class prev = 1, sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && a[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(a[s], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

// Homology by ranks over ℚ / 𝔽_p only (free parts), independent of SNF.
inline std::size_t betti(const chainweight::ChainComplex& x, int i) {
  return x.rank(i) - oracle::rank(x.d(i)) - oracle::rank(x.d(i + 1));
}

// Hom(M, N) and Ext(M, N) for f.g. abelian groups, as lists of cyclic orders
// (0 = ℤ). Collapsed into invariant factors at the end.
// Alternating sum of ranks.
inline long euler(const chainweight::ChainComplex& x) {
  long chi = 0;
  for (int i = x.min_degree(); i <= x.max_degree(); ++i) chi += (i % 2 == 0 ? 1 : -1) * static_cast<long>(x.rank(i));
  return chi;
}

inline std::vector<mpz_class> cyclic(const ModulePresentation& m) {
  std::vector<mpz_class> out(m.free_rank, 0);
  out.insert(out.end(), m.torsion.begin(), m.torsion.end());
  return out;
}

inline mpz_class gcd0(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline ModulePresentation collapse(const std::vector<mpz_class>& orders, chainweight::RingSpec ring) {
  ModulePresentation out;
  std::vector<mpz_class> tors;
  for (auto& o : orders) {
    if (o == 0) ++out.free_rank;
    else if (o != 1) tors.push_back(o);
  }
  if (!tors.empty()) {
    Matrix d(ring, tors.size(), tors.size());
    for (std::size_t k = 0; k < tors.size(); ++k) d.set(k, k, tors[k]);
    for (auto& e : chainweight::elementary_divisors(d))
      if (e != 1) out.torsion.push_back(e);
  }
  return out;
}

// [X, Y] over ℤ for complexes with the given homology:
//   ⊕_i Hom(H_i X, H_i Y) ⊕ Ext(H_i X, H_{i+1} Y).
inline ModulePresentation homotopy_classes(const HomologyProfile& x, const HomologyProfile& y) {
  std::vector<mpz_class> orders;
  for (const auto& [i, hx] : x.groups) {
    auto a = cyclic(hx);
    auto b = cyclic(y.at(i));
    auto c = cyclic(y.at(i + 1));
    for (auto& s : a)
      for (auto& t : b) orders.push_back(s == 0 ? t : t == 0 ? mpz_class(1) : gcd0(s, t));
    for (auto& s : a)
      if (s != 0)
        for (auto& t : c) orders.push_back(gcd0(s, t));  // Ext(ℤ/s, ℤ/t) = ℤ/gcd, Ext(ℤ/s, ℤ) = ℤ/s
  }
  return collapse(orders, x.ring);
}

// Over a field: [X, Y] has dimension Σ_i b_i(X) b_i(Y).
inline std::size_t homotopy_classes_dim(const HomologyProfile& x, const HomologyProfile& y) {
  std::size_t n = 0;
  for (const auto& [i, hx] : x.groups) n += hx.free_rank * y.at(i).free_rank;
  return n;
}

}  // namespace oracle
