#include "chainweight/linalg.hpp"

#include <algorithm>
#include <utility>

#include "chainweight/errors.hpp"

namespace chainweight {

namespace {

// Working state of the Smith reduction. Transform matrices are tracked only
// when requested; U_inv and V_inv receive the inverse of every operation.
struct SmithWork {
  Matrix D;
  bool track_u = false, track_v = false, track_inv = false;
  Matrix U, U_inv, V, V_inv;

  void swap_rows(std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    if (track_u) U.swap_rows(a, b);
    if (track_inv) U_inv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    if (track_v) V.swap_cols(a, b);
    if (track_inv) V_inv.swap_rows(a, b);
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const mpz_class& f, std::size_t from) {
    D.add_row_multiple(dst, src, f, from);
    if (track_u) U.add_row_multiple(dst, src, f);
    if (track_inv) U_inv.add_col_multiple(src, dst, -f);
  }
  // col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, const mpz_class& f, std::size_t from) {
    D.add_col_multiple(dst, src, f, from);
    if (track_v) V.add_col_multiple(dst, src, f);
    if (track_inv) V_inv.add_row_multiple(src, dst, -f);
  }
  void scale_row(std::size_t r, const mpz_class& unit, const mpz_class& unit_inv) {
    D.scale_row(r, unit);
    if (track_u) U.scale_row(r, unit);
    if (track_inv) U_inv.scale_col(r, unit_inv);
  }
};

struct Pivot {
  std::size_t row, col;
};

// Smallest |entry| among rows/cols >= t; ties go to the lowest (row, col).
std::optional<Pivot> smallest_in_submatrix(const Matrix& D, std::size_t t) {
  std::optional<Pivot> best;
  for (std::size_t r = t; r < D.rows(); ++r)
    for (std::size_t c = t; c < D.cols(); ++c) {
      const mpz_class& x = D(r, c);
      if (x == 0) continue;
      if (!best || mpz_cmpabs(x.get_mpz_t(), D(best->row, best->col).get_mpz_t()) < 0) best = Pivot{r, c};
    }
  return best;
}

// Smallest nonzero among column t (rows >= t) and row t (cols >= t).
Pivot smallest_in_cross(const Matrix& D, std::size_t t) {
  Pivot best{t, t};
  auto better = [&](std::size_t r, std::size_t c) {
    const mpz_class& x = D(r, c);
    if (x == 0) return false;
    const mpz_class& b = D(best.row, best.col);
    if (b == 0) return true;
    int cmp = mpz_cmpabs(x.get_mpz_t(), b.get_mpz_t());
    return cmp < 0 || (cmp == 0 && std::pair(r, c) < std::pair(best.row, best.col));
  };
  for (std::size_t r = t; r < D.rows(); ++r)
    if (better(r, t)) best = {r, t};
  for (std::size_t c = t; c < D.cols(); ++c)
    if (better(t, c)) best = {t, c};
  return best;
}

void reduce_over_field(SmithWork& w, std::size_t t) {
  const RingSpec& ring = w.D.ring();
  mpz_class inv = ring.inverse(w.D(t, t));
  w.scale_row(t, inv, w.D(t, t));
  for (std::size_t r = t + 1; r < w.D.rows(); ++r) {
    if (w.D(r, t) == 0) continue;
    mpz_class f = ring.reduced(-mpz_class(w.D(r, t)));
    w.add_row(r, t, f, t);
  }
  for (std::size_t c = t + 1; c < w.D.cols(); ++c) {
    if (w.D(t, c) == 0) continue;
    mpz_class f = ring.reduced(-mpz_class(w.D(t, c)));
    w.add_col(c, t, f, t);
  }
}

void reduce_over_integers(SmithWork& w, std::size_t t) {
  Matrix& D = w.D;
  for (;;) {
    bool clean = true;
    for (std::size_t r = t + 1; r < D.rows(); ++r) {
      if (D(r, t) == 0) continue;
      mpz_class q;
      mpz_tdiv_q(q.get_mpz_t(), D(r, t).get_mpz_t(), D(t, t).get_mpz_t());
      w.add_row(r, t, -q, t);
      if (D(r, t) != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < D.cols(); ++c) {
      if (D(t, c) == 0) continue;
      mpz_class q;
      mpz_tdiv_q(q.get_mpz_t(), D(t, c).get_mpz_t(), D(t, t).get_mpz_t());
      w.add_col(c, t, -q, t);
      if (D(t, c) != 0) clean = false;
    }
    if (!clean) {
      Pivot p = smallest_in_cross(D, t);
      w.swap_rows(t, p.row);
      w.swap_cols(t, p.col);
      continue;
    }
    // Divisibility: the pivot must divide the rest of the submatrix.
    bool fixed = false;
    for (std::size_t r = t + 1; r < D.rows() && !fixed; ++r)
      for (std::size_t c = t + 1; c < D.cols(); ++c) {
        if (D(r, c) == 0 || mpz_divisible_p(D(r, c).get_mpz_t(), D(t, t).get_mpz_t())) continue;
        w.add_row(t, r, 1, t);
        fixed = true;
        break;
      }
    if (!fixed) break;
  }
  if (D(t, t) < 0) w.scale_row(t, -1, -1);
}

SmithWork run_smith(const Matrix& m, bool track_u, bool track_v, bool track_inv) {
  SmithWork w;
  w.D = m;
  w.track_u = track_u;
  w.track_v = track_v;
  w.track_inv = track_inv;
  const RingSpec& ring = m.ring();
  if (track_u) w.U = Matrix::identity(ring, m.rows());
  if (track_v) w.V = Matrix::identity(ring, m.cols());
  if (track_inv) {
    w.U_inv = Matrix::identity(ring, m.rows());
    w.V_inv = Matrix::identity(ring, m.cols());
  }
  std::size_t limit = std::min(m.rows(), m.cols());
  for (std::size_t t = 0; t < limit; ++t) {
    auto p = smallest_in_submatrix(w.D, t);
    if (!p) break;
    w.swap_rows(t, p->row);
    w.swap_cols(t, p->col);
    if (ring.is_field())
      reduce_over_field(w, t);
    else
      reduce_over_integers(w, t);
  }
  return w;
}

std::vector<mpz_class> diagonal_divisors(const Matrix& D) {
  std::vector<mpz_class> out;
  std::size_t limit = std::min(D.rows(), D.cols());
  for (std::size_t t = 0; t < limit && D(t, t) != 0; ++t) out.push_back(D(t, t));
  return out;
}

}  // namespace

std::string ModulePresentation::to_string(const RingSpec& ring) const {
  if (is_zero()) return "0";
  std::string base = ring.name();
  std::string out;
  if (free_rank > 0) out = free_rank == 1 ? base : base + "^" + std::to_string(free_rank);
  for (const auto& t : torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + t.get_str();
  }
  return out;
}

SmithForm smith_normal_form(const Matrix& m) {
  SmithWork w = run_smith(m, true, true, false);
  SmithForm f{std::move(w.U), std::move(w.D), std::move(w.V), {}};
  f.elementary_divisors = diagonal_divisors(f.D);
  return f;
}

SmithFormWithInverses smith_normal_form_with_inverses(const Matrix& m) {
  SmithWork w = run_smith(m, true, true, true);
  SmithFormWithInverses out{SmithForm{std::move(w.U), std::move(w.D), std::move(w.V), {}}, std::move(w.U_inv),
                            std::move(w.V_inv)};
  out.form.elementary_divisors = diagonal_divisors(out.form.D);
  return out;
}

std::vector<mpz_class> elementary_divisors(const Matrix& m) {
  return diagonal_divisors(run_smith(m, false, false, false).D);
}

std::size_t rank(const Matrix& m) { return elementary_divisors(m).size(); }

Matrix kernel_basis(const Matrix& m) {
  ColumnEchelon e = column_echelon(m);
  return e.V.block(0, e.rank(), m.cols(), m.cols() - e.rank());
}

ModulePresentation cokernel_invariants(const Matrix& m) {
  auto divs = elementary_divisors(m);
  ModulePresentation out;
  out.free_rank = m.rows() - divs.size();
  if (!m.ring().is_field())
    for (auto& d : divs)
      if (d != 1) out.torsion.push_back(d);
  return out;
}

ColumnEchelon column_echelon(const Matrix& m) {
  const RingSpec& ring = m.ring();
  ColumnEchelon e{m, Matrix::identity(ring, m.cols()), {}};
  Matrix& H = e.H;
  Matrix& V = e.V;
  std::size_t next = 0;  // columns [0, next) hold pivots
  std::vector<bool> done(H.rows(), false);
  // Sparsest remaining row first (counted on the free columns), which keeps
  // fill-in and coefficient growth down on block-sparse hom differentials.
  auto pick_row = [&]() -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    std::size_t best_count = 0;
    for (std::size_t r = 0; r < H.rows(); ++r) {
      if (done[r]) continue;
      std::size_t count = 0;
      for (std::size_t c = next; c < H.cols(); ++c)
        if (H(r, c) != 0) ++count;
      if (count == 0) {
        done[r] = true;
        continue;
      }
      if (!best || count < best_count) {
        best = r;
        best_count = count;
      }
    }
    return best;
  };
  while (next < H.cols()) {
    auto row = pick_row();
    if (!row) break;
    std::size_t r = *row;
    done[r] = true;
    for (;;) {
      // smallest nonzero entry of row r among the free columns
      std::optional<std::size_t> p;
      for (std::size_t c = next; c < H.cols(); ++c)
        if (H(r, c) != 0 && (!p || mpz_cmpabs(H(r, c).get_mpz_t(), H(r, *p).get_mpz_t()) < 0)) p = c;
      if (!p) break;
      if (*p != next) {
        H.swap_cols(next, *p);
        V.swap_cols(next, *p);
      }
      bool clean = true;
      for (std::size_t c = next + 1; c < H.cols(); ++c) {
        if (H(r, c) == 0) continue;
        mpz_class q;
        if (ring.is_field()) {
          q = ring.reduced(-H(r, c) * ring.inverse(H(r, next)));
        } else {
          mpz_tdiv_q(q.get_mpz_t(), H(r, c).get_mpz_t(), H(r, next).get_mpz_t());
          q = -q;
        }
        H.add_col_multiple(c, next, q);
        V.add_col_multiple(c, next, q);
        if (H(r, c) != 0) clean = false;
      }
      if (clean) {
        e.pivot_rows.push_back(r);
        ++next;
        break;
      }
    }
  }
  return e;
}

EchelonSolver::EchelonSolver(const Matrix& m) : e_(column_echelon(m)) {}

std::optional<Matrix> EchelonSolver::solve(const Matrix& b) const {
  const RingSpec& ring = e_.H.ring();
  require_same_ring(ring, b.ring(), "solve");
  if (b.rows() != e_.H.rows())
    throw UsageError("solve: right-hand side has " + std::to_string(b.rows()) + " rows, matrix has " +
                     std::to_string(e_.H.rows()));
  std::size_t n = e_.H.cols();
  Matrix y(ring, n, b.cols());
  Matrix residual = b;
  // forward substitution in pivot order
  for (std::size_t j = 0; j < e_.rank(); ++j) {
    std::size_t r = e_.pivot_rows[j];
    const mpz_class& piv = e_.H(r, j);
    for (std::size_t k = 0; k < b.cols(); ++k) {
      const mpz_class& num = residual(r, k);
      if (num == 0) continue;
      mpz_class q;
      if (ring.is_field()) {
        q = ring.reduced(num * ring.inverse(piv));
      } else {
        if (!mpz_divisible_p(num.get_mpz_t(), piv.get_mpz_t())) return std::nullopt;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), piv.get_mpz_t());
      }
      y.set(j, k, q);
      for (std::size_t i = 0; i < e_.H.rows(); ++i)
        if (e_.H(i, j) != 0) residual.set(i, k, residual(i, k) - q * e_.H(i, j));
    }
  }
  if (!residual.is_zero()) return std::nullopt;
  return e_.V * y;
}

std::optional<Matrix> solve(const Matrix& m, const Matrix& b) {
  require_same_ring(m.ring(), b.ring(), "solve");
  if (b.rows() != m.rows())
    throw UsageError("solve: right-hand side has " + std::to_string(b.rows()) + " rows, matrix has " +
                     std::to_string(m.rows()));
  auto x = EchelonSolver(m).solve(b);
  if (x && !(m * *x == b)) throw InvariantViolation("solve: returned solution fails M*x = b");
  return x;
}

std::optional<Matrix> right_inverse(const Matrix& m) { return solve(m, Matrix::identity(m.ring(), m.rows())); }

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto s = smith_normal_form(m);
  for (const auto& d : s.elementary_divisors)
    if (!m.ring().is_unit(d)) return std::nullopt;
  if (s.rank() != m.rows()) return std::nullopt;
  // U M V = D with D = identity (divisors normalized to 1), so M⁻¹ = V U.
  return s.V * s.U;
}

bool is_split_mono(const Matrix& m) {
  auto d = elementary_divisors(m);
  return d.size() == m.cols() && std::all_of(d.begin(), d.end(), [&](const mpz_class& e) { return m.ring().is_unit(e); });
}

bool is_split_epi(const Matrix& m) {
  auto d = elementary_divisors(m);
  return d.size() == m.rows() && std::all_of(d.begin(), d.end(), [&](const mpz_class& e) { return m.ring().is_unit(e); });
}

std::optional<SplitCokernel> split_cokernel(const Matrix& i) {
  std::size_t n = i.rows(), m = i.cols();
  if (m == 0) return SplitCokernel{Matrix::identity(i.ring(), n), Matrix::identity(i.ring(), n)};
  if (!is_split_mono(i)) return std::nullopt;
  auto snf = smith_normal_form_with_inverses(i);
  return SplitCokernel{snf.form.U.block(m, 0, n - m, n), snf.U_inv.block(0, m, n, n - m)};
}

}  // namespace chainweight
