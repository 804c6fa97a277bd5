#include "chainweight/fuzz.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include "chainweight/errors.hpp"
#include "chainweight/kzero.hpp"

namespace chainweight {

GeneratedComplex Trial::complex(const std::string& label) { return complex(label, params); }

GeneratedComplex Trial::complex(const std::string& label, const GenParams& p) {
  auto g = gen_complex(rng, p);
  note(label, g.complex);
  return g;
}

void Trial::note(const std::string& label, const ChainComplex& x) { inputs_.emplace_back(label, serialize_complex(x)); }

void Trial::check(const std::string& property, bool ok, const std::string& message) {
  outcomes_.push_back({property, ok, ok ? std::string() : message});
}

void Trial::check(const std::string& property, const Diagnostics& d) {
  std::string msg = d.message;
  if (!d.ok && d.degree) msg = "degree " + std::to_string(*d.degree) + ": " + msg;
  check(property, d.ok, msg);
}

namespace {

using Body = std::function<void(Trial&, bool control)>;

struct Suite {
  std::string name, description;
  Body body;
};

// ---------------------------------------------------------------------------
// Library-side oracles, independent of the Smith normal form code.

std::size_t fraction_rank(const Matrix& m) {
  std::size_t rows = m.rows(), cols = m.cols(), r = 0;
  if (m.ring().is_field()) {
    mpz_class p = m.ring().modulus();
    std::vector<mpz_class> a = m.entries();
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
      std::size_t piv = r;
      while (piv < rows && a[piv * cols + c] == 0) ++piv;
      if (piv == rows) continue;
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[piv * cols + j]);
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), a[r * cols + c].get_mpz_t(), p.get_mpz_t());
      for (std::size_t i = r + 1; i < rows; ++i) {
        mpz_class f = a[i * cols + c] * inv;
        if (f == 0) continue;
        for (std::size_t j = c; j < cols; ++j) {
          a[i * cols + j] -= f * a[r * cols + j];
          mpz_fdiv_r(a[i * cols + j].get_mpz_t(), a[i * cols + j].get_mpz_t(), p.get_mpz_t());
        }
      }
      ++r;
    }
    return r;
  }
  std::vector<mpq_class> a(m.entries().begin(), m.entries().end());
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(a[r * cols + j], a[piv * cols + j]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      mpq_class f = a[i * cols + c] / a[r * cols + c];
      if (f == 0) continue;
      for (std::size_t j = c; j < cols; ++j) a[i * cols + j] -= f * a[r * cols + j];
    }
    ++r;
  }
  return r;
}

// Fraction-free Bareiss elimination on integer representatives.
mpz_class bareiss_det(const Matrix& m) {
  std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<mpz_class> a = m.entries();
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv * n + k] == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[piv * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(a[i * n + j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k * n + k];
  }
  mpz_class d = a[n * n - 1] * sign;
  return m.ring().reduced(d);
}

Matrix random_matrix(Rng& rng, RingSpec ring, std::size_t r, std::size_t c, long bound) {
  Matrix m(ring, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rng.uniform(-bound, bound));
  return m;
}

std::size_t dim(Rng& rng, const GenParams& p) { return static_cast<std::size_t>(rng.uniform(0, static_cast<long>(p.max_rank))); }

int random_degree(Rng& rng, const GenParams& p, int pad = 1) {
  return static_cast<int>(rng.uniform(p.min_degree - pad, p.max_degree + pad));
}

ChainComplex point(RingSpec ring, int deg) { return ChainComplex::concentrated(ring, deg, 1); }

ChainComplex two_term(RingSpec ring, int top, long t) { return ChainComplex::two_term(top, Matrix(ring, 1, 1, {mpz_class(t)})); }

/// Shifted so its weight range starts at n (or ends at n when `below`).
ChainComplex placed(const ChainComplex& x, int n, bool below) {
  auto wb = weight_bounds(x);
  if (wb.zero) return x;
  return shift(x, below ? n - wb.hi : n - wb.lo);
}

GenParams with_mix(GenParams p, BlockMix mix) {
  p.mix = mix;
  return p;
}

ChainMap map_inverse(const ChainMap& iso) {
  return ChainMap(iso.target(), iso.source(), [&](int deg) { return *inverse(iso.at(deg)); });
}

/// ψ f φ⁻¹ on conjugates of both ends.
ChainMap conjugate_map(Rng& rng, const ChainMap& f, long bound, std::size_t steps) {
  auto [x, phi] = conjugate(rng, f.source(), bound, steps);
  auto [y, psi] = conjugate(rng, f.target(), bound, steps);
  ChainMap phi_inv = map_inverse(phi);
  return compose(psi, compose(f, phi_inv));
}

/// f : X → Y with cells of a complex in degrees >= n attached in degrees >= n+1.
ChainMap connected_map(Trial& t, const ChainComplex& x, int n) {
  GenParams cp = t.params;
  cp.min_degree = n;
  cp.max_degree = std::max(n, t.params.max_degree);
  auto c = t.complex("cells", cp).complex;
  Cone cn = cone(gen_chain_map(t.rng, c, x));
  auto [y, iso] = conjugate(t.rng, cn.complex, t.params.max_entry, t.params.conjugation_steps);
  return compose(iso, cn.from_target);
}

CellFiltration torsion_level_filtration(RingSpec ring) {
  ChainComplex q = two_term(ring, 1, 2);
  CellFiltration f;
  f.lo = 0;
  f.hi = 1;
  f.stages = {ChainComplex(ring, 0), q, q};
  f.inclusions = {ChainMap::zero(f.stages[0], q), ChainMap::identity(q)};
  return f;
}

long chi(const ChainComplex& x) { return euler_char(x).value; }

template <class F>
bool throws_as_usage(F&& f) {
  try {
    f();
  } catch (const UsageError&) {
    return true;
  }
  return false;
}

template <class E, class F>
bool throws(F&& f) {
  try {
    f();
  } catch (const E&) {
    return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// exact-linalg

void snf_suite(Trial& t, bool control) {
  const std::string P = "exact-linalg.snf";
  RingSpec R = t.params.ring;
  Matrix m = random_matrix(t.rng, R, dim(t.rng, t.params), dim(t.rng, t.params), t.params.max_entry);
  auto s = smith_normal_form(m);
  bool diag = true, chain = true;
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j) {
      const mpz_class want = (i == j && i < s.rank()) ? s.elementary_divisors[i] : mpz_class(0);
      if (s.D(i, j) != want) diag = false;
    }
  for (std::size_t i = 0; i + 1 < s.rank(); ++i)
    if (!mpz_divisible_p(s.elementary_divisors[i + 1].get_mpz_t(), s.elementary_divisors[i].get_mpz_t())) chain = false;
  t.check(P, s.U * m * s.V == s.D, "U M V != D on " + m.to_string());
  t.check(P, diag && chain, "D is not a divisibility-chain diagonal");
  t.check(P, R.is_unit(bareiss_det(s.U)) && R.is_unit(bareiss_det(s.V)), "transform determinant is not a unit");
  if (control) t.check(P + ".control", !R.is_unit(bareiss_det(Matrix(R, 2, 2, {2, 0, 0, 1}))) || R.is_field(),
                       "det 2 matrix accepted as unimodular");
}

void rank_suite(Trial& t, bool control) {
  const std::string P = "exact-linalg.rank";
  RingSpec R = t.params.ring;
  std::size_t r = dim(t.rng, t.params), c = dim(t.rng, t.params);
  // low-rank products exercise dependent rows
  std::size_t inner = static_cast<std::size_t>(t.rng.uniform(0, static_cast<long>(std::max(r, c))));
  Matrix m = random_matrix(t.rng, R, r, inner, t.params.max_entry) * random_matrix(t.rng, R, inner, c, t.params.max_entry);
  t.check(P, rank(m) == fraction_rank(m), "rank mismatch on " + m.to_string());
  if (control) t.check(P + ".control", rank(Matrix(R, 1, 2, {1, 1})) != 2, "rank exceeds row count");
}

void kernel_suite(Trial& t, bool control) {
  const std::string P = "exact-linalg.kernel";
  RingSpec R = t.params.ring;
  std::size_t r = dim(t.rng, t.params), c = dim(t.rng, t.params);
  std::size_t inner = static_cast<std::size_t>(t.rng.uniform(0, static_cast<long>(std::max(r, c))));
  Matrix m = random_matrix(t.rng, R, r, inner, t.params.max_entry) * random_matrix(t.rng, R, inner, c, t.params.max_entry);
  Matrix k = kernel_basis(m);
  t.check(P, (m * k).is_zero(), "M K != 0");
  t.check(P, k.rows() == c && fraction_rank(k) == c - fraction_rank(m) && k.cols() == fraction_rank(k),
          "kernel basis has the wrong rank");
  if (control) {
    Matrix bad = Matrix::identity(R, 2);
    t.check(P + ".control", !(Matrix::identity(R, 2) * bad).is_zero(), "identity treated as kernel");
  }
}

void solve_suite(Trial& t, bool control) {
  const std::string P = "exact-linalg.solve";
  RingSpec R = t.params.ring;
  std::size_t r = dim(t.rng, t.params), c = dim(t.rng, t.params);
  Matrix m = random_matrix(t.rng, R, r, c, t.params.max_entry);
  Matrix x0 = random_matrix(t.rng, R, c, 1, t.params.max_entry);
  Matrix b = m * x0;
  auto x = solve(m, b);
  t.check(P, x && m * *x == b, "consistent system reported unsolvable");
  Matrix b2 = random_matrix(t.rng, R, r, 1, t.params.max_entry);
  auto y = solve(m, b2);
  if (y) {
    t.check(P, m * *y == b2, "returned x with M x != b");
  } else {
    bool rational = fraction_rank(Matrix::hstack(m, b2)) == fraction_rank(m);
    // over a field "none" must mean inconsistent; over Z it may be non-integral
    t.check(P, !R.is_field() || !rational, "solvable field system reported unsolvable");
  }
  if (control && !R.is_field())
    t.check(P + ".control", !solve(Matrix(R, 1, 1, {2}), Matrix(R, 1, 1, {1})).has_value(), "2x = 1 solved over Z");
}

// ---------------------------------------------------------------------------
// chain-core

void d_squared_suite(Trial& t, bool control) {
  const std::string P = "chain-core.d-squared";
  auto x = t.complex("X").complex;
  auto y = t.complex("Y").complex;
  ChainMap f = gen_chain_map(t.rng, x, y);
  int k = static_cast<int>(t.rng.uniform(-3, 3));
  t.check(P, validate(shift(x, k)));
  t.check(P, validate(direct_sum(x, y)));
  t.check(P, validate(cone(f).complex));
  t.check(P, validate(cylinder(f).complex));
  t.check(P, validate(HomComplex(x, y).complex()));
  t.check(P, validate(minimize(x).complex));
  if (control) {
    RingSpec R = t.params.ring;
    ChainComplex bad(R, 0, {1, 1, 1}, {Matrix(R, 1, 1, {1}), Matrix(R, 1, 1, {1})});
    t.check(P + ".control", !validate(bad).ok, "d^2 != 0 accepted");
  }
}

void euler_relation_suite(Trial& t, bool control) {
  const std::string P = "chain-core.euler-relation";
  auto x = t.complex("X").complex;
  auto y = t.complex("Y").complex;
  ChainMap f = gen_chain_map(t.rng, x, y);
  t.check(P, chi(cone(f).complex) == chi(y) - chi(x), "chi(cone f) != chi(Y) - chi(X)");
  if (control) {
    ChainComplex z = point(t.params.ring, 0);
    t.check(P + ".control", chi(cone(ChainMap::identity(z)).complex) != chi(z) + chi(z), "sign error undetected");
  }
}

void nullhomotopy_suite(Trial& t, bool control) {
  const std::string P = "chain-core.nullhomotopy";
  auto x = t.complex("X").complex;
  auto y = t.complex("Y").complex;
  HomComplex hom(x, y);
  ChainMap f = gen_chain_map(t.rng, x, y);
  // class of f in pi0 is zero iff its vector is a boundary of Hom
  bool zero_class = solve(hom.complex().d(1), hom.flatten(f)).has_value();
  auto h = nullhomotopy(f);
  t.check(P, h.has_value() == zero_class, "nullhomotopy disagrees with the class of f");
  if (h) t.check(P, h->verify());
  // boundaries d h + h d always admit a witness
  Matrix v = random_matrix(t.rng, x.ring(), hom.complex().rank(1), 1, t.params.max_entry);
  ChainMap b = hom.to_map(hom.complex().d(1) * v);
  auto hb = nullhomotopy(b);
  t.check(P, hb.has_value() && hb->verify().ok, "boundary map without nullhomotopy");
  if (control) {
    ChainComplex z = point(t.params.ring, 0);
    t.check(P + ".control", !nullhomotopy(ChainMap::identity(z)).has_value(), "identity of R[0] nullhomotopic");
  }
}

void minimize_suite(Trial& t, bool control) {
  const std::string P = "chain-core.minimize";
  auto g = t.complex("X");
  auto m = minimize(g.complex);
  t.check(P, compose(m.forth, m.back) == ChainMap::identity(m.complex), "forth . back != id");
  t.check(P, m.homotopy.verify());
  t.check(P, m.homotopy.from() == compose(m.back, m.forth) && m.homotopy.to() == ChainMap::identity(g.complex),
          "homotopy has the wrong endpoints");
  bool no_units = true;
  for (int i = m.complex.min_degree(); i <= m.complex.max_degree() + 1; ++i)
    for (const auto& e : m.complex.d(i).entries())
      if (e != 0 && m.complex.ring().is_unit(e)) no_units = false;
  t.check(P, no_units, "minimal complex keeps a unit entry");
  t.check(P, homology(m.complex) == g.expected, "minimal model changed homology");
  if (control) {
    ChainComplex e = two_term(t.params.ring, 1, 1);
    Homotopy wrong(ChainMap::identity(e), ChainMap::zero(e, e), [&](int deg) { return Matrix(e.ring(), e.rank(deg + 1), e.rank(deg)); });
    t.check(P + ".control", !wrong.verify().ok, "zero homotopy accepted for id ~ 0");
  }
}

void classify_suite(Trial& t, bool control) {
  const std::string P = "chain-core.classify";
  auto g = t.complex("X");
  auto e = t.complex("E", with_mix(t.params, {0, 2, 0}));
  auto [y, iso] = conjugate(t.rng, direct_sum(g.complex, e.complex), t.params.max_entry, t.params.conjugation_steps);
  t.note("Y", y);
  auto eq = equivalence_between(g.complex, y);
  t.check(P, homotopy_classify(g.complex) == homotopy_classify(y) && eq && is_homotopy_equivalence(eq->forth),
          "sum with acyclic pieces not recognised as equivalent");
  if (eq) t.check(P, eq->verify());
  auto z = t.complex("Z").complex;
  bool same = homotopy_classify(g.complex) == homotopy_classify(z);
  auto ez = equivalence_between(g.complex, z);
  t.check(P, same == ez.has_value(), "profile equality disagrees with equivalence search");
  if (ez) t.check(P, is_homotopy_equivalence(ez->forth, true), "returned map is not an equivalence");
  if (control && !t.params.ring.is_field())
    t.check(P + ".control", !equivalence_between(two_term(t.params.ring, 1, 2), two_term(t.params.ring, 1, 3)),
            "Z/2 and Z/3 identified");
}

void split_acyclic_suite(Trial& t, bool control) {
  const std::string P = "chain-core.split-acyclic";
  auto x = t.complex("X", with_mix(t.params, {0, 2, 0})).complex;
  auto s = split_acyclic(x);
  auto v = s.verify(x);
  bool contracted = s.contraction.verify().ok && s.contraction.from() == ChainMap::identity(x) && s.contraction.to().is_zero();
  bool ranks = true, conj = true;
  for (int i = std::min(x.min_degree(), s.elementary.min_degree()); i <= std::max(x.max_degree(), s.elementary.max_degree()); ++i)
    if (x.rank(i) != s.elementary.rank(i)) ranks = false;
  std::size_t pieces = 0;
  for (const auto& [top, count] : s.pieces) pieces += 2 * count;
  if (pieces != x.total_rank()) ranks = false;
  for (int i = x.min_degree(); i <= x.max_degree() && ranks; ++i) {
    std::size_t k = static_cast<std::size_t>(i - s.lo);
    if (k >= s.phi.size()) continue;
    if (!(s.phi[k] * s.psi[k]).is_identity()) conj = false;
    if (k > 0 && !(s.phi[k - 1] * x.d(i) * s.psi[k] == s.elementary.d(i))) conj = false;
  }
  if (!v.ok)
    t.check(P, v);
  else if (!contracted)
    t.check(P, false, "contraction does not witness id ~ 0");
  else if (!ranks)
    t.check(P, false, "elementary decomposition is not rank-consistent");
  else
    t.check(P, conj, "change of basis does not carry X onto the elementary sum");
  if (control)
    t.check(P + ".control", throws<MathNegative>([&] { split_acyclic(point(t.params.ring, 0)); }), "R[0] split as acyclic");
}

// ---------------------------------------------------------------------------
// weight-structures

bool expected_geq(const HomologyProfile& h, int n) { return h.is_acyclic() || h.lowest() >= n; }
bool expected_leq(const HomologyProfile& h, int n) {
  return h.is_acyclic() || h.highest() < n || (h.highest() == n && h.at(n).is_free());
}

void axiom_inclusion_suite(Trial& t, bool control) {
  const std::string P = "weight-structures.axiom-inclusion";
  auto g = t.complex("X");
  int n = random_degree(t.rng, t.params);
  const auto& x = g.complex;
  t.check(P, !in_w_geq(x, n + 1) || in_w_geq(x, n), "w>=n+1 not inside w>=n");
  t.check(P, !in_w_leq(x, n - 1) || in_w_leq(x, n), "w<=n-1 not inside w<=n");
  t.check(P, in_w_geq(x, n) == expected_geq(g.expected, n) && in_w_leq(x, n) == expected_leq(g.expected, n),
          "membership disagrees with the generator's homology at n = " + std::to_string(n));
  if (control && !t.params.ring.is_field())
    t.check(P + ".control", !in_w_leq(two_term(t.params.ring, 1, 2), 0), "torsion H_0 accepted in w<=0");
}

void orthogonality_suite(Trial& t, bool control) {
  const std::string P = "weight-structures.orthogonality";
  auto x = placed(t.complex("X").complex, 0, true);
  auto y = placed(t.complex("Y").complex, 1, false);
  t.check(P + ".membership", in_w_leq(x, 0) && in_w_geq(y, 1), "shifted pair misses its weight range");
  auto group = pi0_hom(x, y);
  t.check(P, group.is_zero(), "pi0 Hom(X, Y) = " + group.to_string(x.ring()));
  if (control) {
    ChainComplex z = point(t.params.ring, 0);
    t.check(P + ".control", !pi0_hom(z, z).is_zero() && throws_as_usage([&] { check_orthogonality(z, z, 0); }),
            "overlapping pair not flagged");
  }
}

void decomposition_suite(Trial& t, bool control) {
  const std::string P = "weight-structures.decomposition";
  auto x = t.complex("X").complex;
  int n = random_degree(t.rng, t.params);
  auto d = weight_decompose(x, n);
  t.check(P, d.verify());
  t.check(P + ".membership", in_w_leq(d.a, n) && in_w_geq(d.b, n + 1), "pieces outside their weight ranges");
  if (control) {
    auto bad = weight_decompose(point(t.params.ring, 1), 0);
    bad.p_map = ChainMap::zero(bad.x, bad.b);
    t.check(P + ".control", !bad.verify().ok, "zero projection accepted");
  }
}

void shift_suite(Trial& t, bool control) {
  const std::string P = "weight-structures.shift";
  auto x = t.complex("X").complex;
  int n = random_degree(t.rng, t.params);
  int k = static_cast<int>(t.rng.uniform(-3, 3));
  auto s = shift(x, k);
  t.check(P, in_w_leq(x, n) == in_w_leq(s, n + k), "w<= not shift compatible");
  t.check(P, in_w_geq(x, n) == in_w_geq(s, n + k), "w>= not shift compatible");
  if (control) {
    ChainComplex z = point(t.params.ring, 0);
    t.check(P + ".control", in_w_leq(z, 0) != in_w_leq(shift(z, 1), 0), "shift ignored");
  }
}

void closure_suite(Trial& t, bool control) {
  const std::string P = "weight-structures.closure";
  int n = random_degree(t.rng, t.params, 0);
  auto x = placed(t.complex("X").complex, n, false);
  auto y = placed(t.complex("Y").complex, n, false);
  auto c = cone(gen_chain_map(t.rng, x, y)).complex;
  t.check(P, in_w_geq(c, n), "cofiber of w>=n objects leaves w>=n");
  auto u = placed(t.complex("U").complex, n, true);
  auto v = placed(t.complex("V").complex, n, true);
  auto fib = shift(cone(gen_chain_map(t.rng, u, v)).complex, -1);
  t.check(P, in_w_leq(fib, n), "fiber of w<=n objects leaves w<=n");
  auto a = t.complex("A").complex;
  auto b = t.complex("B").complex;
  int m = random_degree(t.rng, t.params);
  auto s = direct_sum(a, b);
  t.check(P, in_w_geq(s, m) == (in_w_geq(a, m) && in_w_geq(b, m)), "w>= not closed under summands");
  t.check(P, in_w_leq(s, m) == (in_w_leq(a, m) && in_w_leq(b, m)), "w<= not closed under summands");
  if (control) {
    ChainComplex z = point(t.params.ring, 0);
    t.check(P + ".control", !in_w_leq(cone(ChainMap::zero(z, ChainComplex(z.ring(), 0))).complex, 0),
            "cofiber of w<=0 objects kept in w<=0");
  }
}

void prop2_suite(Trial& t, bool control) {
  const std::string P = "weight-structures.prop2";
  int n = random_degree(t.rng, t.params, 0);
  auto x = placed(t.complex("X").complex, n, false);
  int k = n + static_cast<int>(t.rng.uniform(0, 4));
  t.check(P, in_w_geq(weight_decompose(x, k).a, n), "A left w>=n at k = " + std::to_string(k));
  auto y = placed(t.complex("Y").complex, n, true);
  int j = n - 1 - static_cast<int>(t.rng.uniform(0, 4));
  t.check(P, in_w_leq(weight_decompose(y, j).b, n), "B left w<=n at k = " + std::to_string(j));
  if (control) {
    auto e = two_term(t.params.ring, 2, 1);  // acyclic, so in w<=0
    t.check(P + ".control", !in_w_leq(weight_decompose(e, 1).b, 0), "k >= n hypothesis not needed");
  }
}

void detection_suite(Trial& t, bool control) {
  const std::string P = "weight-structures.detection";
  auto g = t.complex("X");
  const auto& x = g.complex;
  bool vanish = true;
  for (int i = x.min_degree() - 1; i <= x.max_degree() + 1; ++i)
    if (!pi0_hom(x, point(x.ring(), i)).is_zero()) vanish = false;
  t.check(P, vanish == g.expected.is_acyclic(), vanish ? "maps to R[i] vanish on a non-acyclic complex" : "acyclic complex detected");
  if (control && !t.params.ring.is_field()) {
    auto q = two_term(t.params.ring, 1, 2);
    // Ext(Z/2, Z) sits one degree above the support of [Z --2--> Z]
    t.check(P + ".control", pi0_hom(q, point(q.ring(), 0)).is_zero() && !pi0_hom(q, point(q.ring(), 1)).is_zero(),
            "extension of the window is unnecessary");
  }
}

void non_degeneracy_suite(Trial& t, bool control) {
  const std::string P = "weight-structures.non-degeneracy";
  auto g = t.complex("X");
  auto wb = weight_bounds(g.complex);
  t.check(P, wb.zero == g.expected.is_acyclic(), "zero marker disagrees with homology");
  if (!wb.zero)
    t.check(P, in_w_geq(g.complex, wb.lo) && !in_w_geq(g.complex, wb.lo + 1) && in_w_leq(g.complex, wb.hi) &&
                   !in_w_leq(g.complex, wb.hi - 1),
            "bounds " + wb.to_string() + " are not minimal");
  if (control) {
    auto e = two_term(t.params.ring, 1, 1);
    t.check(P + ".control", weight_bounds(e).zero && !e.is_zero(), "acyclic complex not marked zero");
  }
}

void heart_splitting_suite(Trial& t, bool control) {
  const std::string P = "weight-structures.heart-splitting";
  RingSpec R = t.params.ring;
  long cap = std::max<long>(1, static_cast<long>(t.params.max_rank) / 2);
  std::size_t a = static_cast<std::size_t>(t.rng.uniform(0, cap)), b = static_cast<std::size_t>(t.rng.uniform(0, cap));
  GenParams ep = with_mix(t.params, {0, 2, 0});
  ep.max_blocks = std::min<std::size_t>(ep.max_blocks, 3);
  auto ex = t.complex("EX", ep).complex;
  auto ey = t.complex("EY", ep).complex;
  ChainComplex fx = ChainComplex::concentrated(R, 0, a), fy = ChainComplex::concentrated(R, 0, a + b);
  auto [p, p_inv] = random_automorphism(t.rng, R, a + b, t.params.max_entry, t.params.conjugation_steps);
  auto [q, q_inv] = random_automorphism(t.rng, R, a, t.params.max_entry, t.params.conjugation_steps);
  Matrix incl(R, a + b, a);
  for (std::size_t i = 0; i < a; ++i) incl.set(i, i, 1);
  Matrix f0 = p * incl * q_inv;
  ChainMap core(fx, fy, [&](int deg) { return deg == 0 ? f0 : Matrix(R, fy.rank(deg), fx.rank(deg)); });
  ChainMap f = conjugate_map(t.rng, direct_sum(core, ChainMap::zero(ex, ey)), t.params.max_entry, t.params.conjugation_steps);
  t.note("X", f.source());
  t.note("Y", f.target());
  auto s = heart_split(f);
  t.check(P + ".witness", s.witness.verify());
  ChainMap gf = compose(s.retraction, f);
  auto h = homotopy_between(gf, ChainMap::identity(f.source()));
  t.check(P, h && h->verify().ok, "g . f not homotopic to the identity");
  if (control) {
    ChainComplex z = point(R, 0);
    ChainMap twice(z, z, [&](int) { return Matrix(R, 1, 1, {2}); });
    t.check(P + ".control", R.is_field() || throws_as_usage([&] { heart_split(twice); }), "x2 treated as a heart ingression");
  }
}

void left_adjacency_suite(Trial& t, bool control) {
  const std::string P = "weight-structures.left-adjacency";
  auto x = t.complex("X").complex;
  int n = random_degree(t.rng, t.params);
  t.check(P, in_t_geq(x, n) == in_w_geq(x, n) && check_left_adjacent(x, n), "t>=n and w>=n differ at n = " + std::to_string(n));
  if (control && !t.params.ring.is_field()) {
    auto q = two_term(t.params.ring, 1, 2);
    t.check(P + ".control", in_t_leq(q, 0) && !in_w_leq(q, 0), "t<=0 and w<=0 agree on torsion");
  }
}

// ---------------------------------------------------------------------------
// cell-filtrations

void skeletal_suite(Trial& t, bool control) {
  const std::string P = "cell-filtrations.skeletal";
  auto x = t.complex("X").complex;
  auto f = skeletal_filtration(x);
  t.check(P, f.colimit() == x, "final stage differs from X");
  t.check(P, verify_cell_filtration(f));
  if (control && !t.params.ring.is_field())
    t.check(P + ".control", !verify_cell_filtration(torsion_level_filtration(t.params.ring)).ok, "torsion quotient accepted");
}

void euler_bookkeeping_suite(Trial& t, bool control) {
  const std::string P = "cell-filtrations.euler-bookkeeping";
  auto g = gen_filtration(t.rng, t.params);
  t.note("X", g.complex);
  t.check(P, verify_cell_filtration(g.filtration));
  long sum = 0;
  for (int k = g.filtration.lo; k <= g.filtration.hi; ++k) {
    auto s = strictify_heart(level_quotient(g.filtration, k).complex, k);
    sum += (k % 2 == 0 ? 1 : -1) * static_cast<long>(s.free.rank(k));
  }
  long want = chi(g.filtration.colimit()) - chi(g.filtration.limit());
  t.check(P, sum == want, "sum over quotients " + std::to_string(sum) + " != " + std::to_string(want));
  if (control) {
    auto x = point(t.params.ring, 1);
    t.check(P + ".control", throws_as_usage([&] { strictify_heart(x, 0); }), "R[1] strictified in degree 0");
  }
}

void v_acyclic_suite(Trial& t, bool control) {
  const std::string P = "cell-filtrations.v-acyclic";
  auto g = gen_filtration(t.rng, with_mix(t.params, {0, 2, 0}));
  t.note("X", g.complex);
  auto v = is_v_acyclic(g.filtration);  // throws on a failed certificate
  bool ok = v.acyclic;
  for (std::size_t i = 0; i < v.stage_bounds.size(); ++i) {
    int k = g.filtration.lo - 1 + static_cast<int>(i);
    const auto& wb = v.stage_bounds[i];
    if (!wb.zero && !(wb.lo == k && wb.hi == k)) ok = false;
  }
  t.check(P, ok, "stage outside its weight");
  if (control) t.check(P + ".control", !is_v_acyclic(skeletal_filtration(point(t.params.ring, 0))).acyclic, "R[0] is v-acyclic");
}

void wedge_formula_suite(Trial& t, bool control) {
  const std::string P = "cell-filtrations.wedge-formula";
  auto a = gen_filtration(t.rng, t.params);
  auto b = gen_filtration(t.rng, t.params);
  t.note("A", a.complex);
  t.note("B", b.complex);
  auto f = gen_filtration_map(t.rng, a, b);
  auto m = mapping_cylinder_filtration(f);
  t.check(P, check_wedge_formula(f, m));
  t.check(P + ".cylinder", verify_cell_filtration(m.filtration, true));
  t.check(P + ".cylinder", is_ingression(m.ingression), "A -> Mf is not an ingression");
  t.check(P + ".cylinder", m.colimit_equivalence.verify());
  if (control) {
    RingSpec R = t.params.ring;
    ChainComplex z = point(R, 0), e = two_term(R, 1, 1), b1 = direct_sum(z, e);
    CellFiltration fa = skeletal_filtration(z), fb;
    fb.lo = 0;
    fb.hi = 1;
    fb.stages = {ChainComplex(R, 0), z, b1};
    fb.inclusions = {ChainMap::zero(fb.stages[0], z), summand_inclusion(z, e, false)};
    auto lax = make_filtration_map(fa, fb, [&](int k, int deg) {
      Matrix out(R, fb.stage(k).rank(deg), fa.stage(k).rank(deg));
      if (k >= 0 && deg == 0) out.set(0, 0, 1);
      if (k >= 1 && deg == 0) out.set(1, 0, 1);
      return out;
    });
    t.check(P + ".control", !lax.strict && throws_as_usage([&] { mapping_cylinder_filtration(lax); }),
            "non-strict square accepted");
  }
}

void factorization_suite(Trial& t, bool control) {
  const std::string P = "cell-filtrations.factorization";
  auto x = t.complex("X").complex;
  int n = static_cast<int>(t.rng.uniform(t.params.min_degree, std::max(t.params.min_degree, t.params.max_degree - 1)));
  ChainMap f = connected_map(t, x, n);
  t.note("Y", f.target());
  t.check(P + ".connectivity", connectivity(f) >= n, "generated map is not n-connected");
  auto fac = factor_connected_map(f, n);
  auto d = fac.verify(f);
  ChainMap recomposed = compose(fac.equivalence.forth, fac.composite());
  // the returned witness certifies recomposed ~ f; solve only if it does not
  bool homotopic = fac.witness.from() == recomposed && fac.witness.to() == f && fac.witness.verify().ok;
  if (!homotopic) {
    auto h = homotopy_between(recomposed, f);
    homotopic = h && h->verify().ok;
  }
  if (!d.ok)
    t.check(P, d);
  else if (!is_homotopy_equivalence(fac.equivalence.forth))
    t.check(P, false, "final map is not an equivalence");
  else
    t.check(P, homotopic, "recomposition not homotopic to f");
  if (control) {
    ChainComplex z = point(t.params.ring, 0);
    t.check(P + ".control", throws<MathNegative>([&] { factor_connected_map(ChainMap::zero(ChainComplex(z.ring(), 0), z), 0); }),
            "0 -> R[0] factored as 0-connected");
  }
}

void composite_connectivity_suite(Trial& t, bool control) {
  const std::string P = "cell-filtrations.composite-connectivity";
  auto x = t.complex("X").complex;
  ChainMap f, g;
  if (t.rng.coin()) {
    int n = random_degree(t.rng, t.params, 0);
    f = connected_map(t, x, n);
    g = connected_map(t, f.target(), static_cast<int>(t.rng.uniform(n - 2, n + 2)));
  } else {
    auto y = t.complex("Y").complex;
    auto z = t.complex("Z").complex;
    f = gen_chain_map(t.rng, x, y);
    g = gen_chain_map(t.rng, y, z);
  }
  auto v = compose_connectivity_check(f, g);
  t.check(P, v.composite >= std::min(v.f, v.g),
          "connectivity(g.f) = " + connectivity_string(v.composite) + " below min(" + connectivity_string(v.f) + ", " +
              connectivity_string(v.g) + ")");
  if (control) {
    ChainComplex z = point(t.params.ring, 0), o(t.params.ring, 0);
    ChainMap f0 = ChainMap::zero(z, o), g0 = ChainMap::zero(o, z);
    t.check(P + ".control", connectivity(compose(g0, f0)) < std::max(connectivity(f0), connectivity(g0)),
            "composite bounded by the max");
  }
}

// ---------------------------------------------------------------------------
// k-zero

void bondarko_suite(Trial& t, bool control) {
  const std::string P = "k-zero.bondarko";
  auto x = t.complex("X").complex;
  K0Class e = euler_char(x), eh = euler_char_homology(x);
  std::vector<ChainComplex> models{x};
  for (int i = 0; i < 2; ++i) models.push_back(conjugate(t.rng, x, t.params.max_entry, t.params.conjugation_steps).first);
  for (const auto& m : models) {
    K0Class k = k0_via_filtration(skeletal_filtration(m));
    t.check(P, k == e && e == eh,
            "filtration " + std::to_string(k.value) + ", euler " + std::to_string(e.value) + ", homology " + std::to_string(eh.value));
  }
  if (control && !t.params.ring.is_field())
    t.check(P + ".control", throws_as_usage([&] { k0_via_filtration(torsion_level_filtration(t.params.ring)); }),
            "unverified filtration accepted");
}

void euler_homology_suite(Trial& t, bool control) {
  const std::string P = "k-zero.euler-homology";
  auto g = t.complex("X");
  long from_expected = 0;
  for (const auto& [deg, m] : g.expected.groups) from_expected += (deg % 2 == 0 ? 1 : -1) * static_cast<long>(m.free_rank);
  t.check(P, euler_char(g.complex) == euler_char_homology(g.complex) && euler_char(g.complex).value == from_expected,
          "chi " + std::to_string(chi(g.complex)) + " != homology " + std::to_string(from_expected));
  if (control) {
    auto z = point(t.params.ring, 1);
    t.check(P + ".control", chi(z) != static_cast<long>(z.total_rank()), "unsigned rank sum agrees");
  }
}

void quasi_iso_suite(Trial& t, bool control) {
  const std::string P = "k-zero.quasi-iso-invariance";
  auto x = t.complex("X").complex;
  ChainMap f;
  switch (t.rng.uniform(0, 4)) {
    case 0: f = minimize(x).forth; break;
    case 1: f = minimize(x).back; break;
    case 2: f = cylinder(gen_chain_map(t.rng, t.complex("W").complex, x)).projection; break;
    case 3: f = cylinder(gen_chain_map(t.rng, x, t.complex("W").complex)).section; break;
    default: {
      auto e = t.complex("E", with_mix(t.params, {0, 2, 0})).complex;
      auto y = conjugate(t.rng, direct_sum(x, e), t.params.max_entry, t.params.conjugation_steps).first;
      f = equivalence_between(x, y)->forth;
    }
  }
  t.check(P + ".quasi-iso", is_quasi_iso(f), "constructed map is not a quasi-isomorphism");
  t.check(P, euler_char(f.source()) == euler_char(f.target()), "chi not preserved");
  if (control) {
    ChainComplex z = point(t.params.ring, 0);
    ChainMap kill = ChainMap::zero(z, ChainComplex(z.ring(), 0));
    t.check(P + ".control", !is_quasi_iso(kill) && chi(kill.source()) != chi(kill.target()), "non-quasi-iso accepted");
  }
}

void filtration_independence_suite(Trial& t, bool control) {
  const std::string P = "k-zero.filtration-independence";
  auto g = gen_filtration(t.rng, t.params);
  t.note("X", g.complex);
  K0Class a = k0_via_filtration(g.filtration);
  K0Class b = k0_via_filtration(skeletal_filtration(g.complex));
  K0Class c = k0_via_filtration(skeletal_filtration(minimize(g.filtration.colimit()).complex));
  t.check(P, a == b && b == c,
          "values " + std::to_string(a.value) + ", " + std::to_string(b.value) + ", " + std::to_string(c.value));
  if (control && !t.params.ring.is_field())
    t.check(P + ".control", throws_as_usage([&] { k0_via_filtration(torsion_level_filtration(t.params.ring)); }),
            "unverified filtration accepted");
}

void additivity_suite(Trial& t, bool control) {
  const std::string P = "k-zero.additivity";
  auto x = t.complex("X").complex;
  auto d = weight_decompose(x, random_degree(t.rng, t.params));
  t.check(P, euler_char(x) == euler_char(d.a) + euler_char(d.b), "chi(X) != chi(A) + chi(B)");
  if (control) {
    auto w = weight_decompose(point(t.params.ring, 1), 0);
    t.check(P + ".control", chi(w.x) != chi(w.a) - chi(w.b), "sign of B irrelevant");
  }
}

void resolution_suite(Trial& t, bool control) {
  const std::string P = "k-zero.resolution-independence";
  RingSpec R = t.params.ring;
  long cap = static_cast<long>(std::min<std::size_t>(t.params.max_rank, 4));
  std::size_t g = static_cast<std::size_t>(t.rng.uniform(0, cap)), r = static_cast<std::size_t>(t.rng.uniform(0, cap));
  std::size_t extra = static_cast<std::size_t>(t.rng.uniform(0, 2));
  Matrix rel = random_matrix(t.rng, R, g, r, t.params.max_entry);
  // same module: redundant relations, one extra generator killed by a relation
  Matrix redundant = rel * random_matrix(t.rng, R, r, extra, t.params.max_entry);
  Matrix top = Matrix::hstack(Matrix::hstack(rel, redundant), -random_matrix(t.rng, R, g, 1, t.params.max_entry));
  Matrix bottom(R, 1, r + extra + 1);
  bottom.set(0, r + extra, 1);
  Matrix other = Matrix::vstack(top, bottom);
  auto [p, p_inv] = random_automorphism(t.rng, R, g + 1, t.params.max_entry, t.params.conjugation_steps);
  auto [q, q_inv] = random_automorphism(t.rng, R, r + extra + 1, t.params.max_entry, t.params.conjugation_steps);
  other = p * other * q;
  t.check(P + ".presentations", cokernel_invariants(rel) == cokernel_invariants(other), "presentations differ");
  auto x = resolve_module(rel), y = resolve_module(other);
  t.note("resolution", x);
  t.note("other", y);
  t.check(P, euler_char(x) == euler_char(y), "chi depends on the presentation");
  t.check(P + ".resolution", homology_at(x, 1).is_zero() && homology_at(x, 0) == cokernel_invariants(rel) &&
                                 homology_at(y, 1).is_zero() && homology_at(y, 0) == cokernel_invariants(other),
          "resolution has the wrong homology");
  if (control && !R.is_field())
    t.check(P + ".control", !(cokernel_invariants(Matrix(R, 1, 1, {2})) == cokernel_invariants(Matrix(R, 1, 1, {3}))),
            "Z/2 and Z/3 presentations paired");
}

// ---------------------------------------------------------------------------
// fuzz-verify

void oracle_soundness_suite(Trial& t, bool control) {
  const std::string P = "fuzz-verify.oracle-soundness";
  auto g = t.complex("X");
  auto h = homology(g.complex);
  t.check(P, h == g.expected, "computed " + h.to_string() + ", declared " + g.expected.to_string());
  if (control) {
    HomologyProfile wrong = g.expected;
    wrong.groups[0].free_rank += 1;
    t.check(P + ".control", !(h == wrong), "perturbed declaration accepted");
  }
}

void chain_map_suite(Trial& t, bool control) {
  const std::string P = "fuzz-verify.chain-map";
  auto x = t.complex("X").complex;
  auto y = t.complex("Y").complex;
  t.check(P, check_chain_map(gen_chain_map(t.rng, x, y, t.params.max_entry)));
  if (control) {
    RingSpec R = t.params.ring;
    ChainComplex a = two_term(R, 1, 1), b = point(R, 0);
    ChainMap bad(a, b, [&](int deg) { return deg == 0 ? Matrix(R, 1, 1, {1}) : Matrix(R, b.rank(deg), a.rank(deg)); });
    t.check(P + ".control", !check_chain_map(bad).ok, "non-chain map accepted");
  }
}

void negative_control_suite(Trial& t, bool) {
  const std::string P = "negative-control";
  auto g = t.complex("X");
  HomologyProfile wrong = g.expected;
  wrong.groups[0].free_rank += 1;
  t.check(P + ".perturbed-oracle", homology(g.complex) == wrong, "declared homology perturbed by one free summand in degree 0");
  auto x = placed(direct_sum(g.complex, point(g.complex.ring(), 0)), 0, true);
  t.check(P + ".self-orthogonality", pi0_hom(x, x).is_zero(), "pi0 Hom(X, X) contains the identity class");
}

const std::vector<Suite>& registry() {
  static const std::vector<Suite> all{
      {"exact-linalg.snf", "U M V = D with unimodular transforms and a divisibility chain", snf_suite},
      {"exact-linalg.rank", "Smith rank equals fraction-field rank", rank_suite},
      {"exact-linalg.kernel", "M K = 0 and rank K = cols - rank M", kernel_suite},
      {"exact-linalg.solve", "returned solutions are exact; field systems never missed", solve_suite},
      {"chain-core.d-squared", "d^2 = 0 after every constructor", d_squared_suite},
      {"chain-core.euler-relation", "chi(cone f) = chi(Y) - chi(X)", euler_relation_suite},
      {"chain-core.nullhomotopy", "witness exists iff the class in pi0 is zero", nullhomotopy_suite},
      {"chain-core.minimize", "minimal model is a certified deformation retract", minimize_suite},
      {"chain-core.classify", "equal profiles iff an equivalence is found", classify_suite},
      {"chain-core.split-acyclic", "acyclic complexes split into elementary pieces", split_acyclic_suite},
      {"weight-structures.axiom-inclusion", "w>=n+1 in w>=n and w<=n-1 in w<=n", axiom_inclusion_suite},
      {"weight-structures.orthogonality", "pi0 Hom(X, Y) = 0 for X in w<=0, Y in w>=1", orthogonality_suite},
      {"weight-structures.decomposition", "weight decompositions verify", decomposition_suite},
      {"weight-structures.shift", "membership is shift compatible", shift_suite},
      {"weight-structures.closure", "closure under cofibers, fibers and summands", closure_suite},
      {"weight-structures.prop2", "decomposition pieces stay in the bounded half", prop2_suite},
      {"weight-structures.detection", "maps into R[i] detect non-acyclic complexes", detection_suite},
      {"weight-structures.non-degeneracy", "zero marker iff acyclic", non_degeneracy_suite},
      {"weight-structures.heart-splitting", "heart ingressions split", heart_splitting_suite},
      {"weight-structures.left-adjacency", "t>=n coincides with w>=n", left_adjacency_suite},
      {"cell-filtrations.skeletal", "skeletal filtration ends at X", skeletal_suite},
      {"cell-filtrations.euler-bookkeeping", "alternating quotient ranks give chi", euler_bookkeeping_suite},
      {"cell-filtrations.v-acyclic", "certificate holds on v-acyclic filtrations", v_acyclic_suite},
      {"cell-filtrations.wedge-formula", "mapping cylinder quotients split as a wedge", wedge_formula_suite},
      {"cell-filtrations.factorization", "n-connected maps factor through cell attachments", factorization_suite},
      {"cell-filtrations.composite-connectivity", "connectivity(g.f) >= min of the parts", composite_connectivity_suite},
      {"k-zero.bondarko", "K0 via filtrations equals both Euler characteristics", bondarko_suite},
      {"k-zero.euler-homology", "chi from ranks equals chi from homology", euler_homology_suite},
      {"k-zero.quasi-iso-invariance", "quasi-isomorphisms preserve chi", quasi_iso_suite},
      {"k-zero.filtration-independence", "K0 does not depend on the filtration", filtration_independence_suite},
      {"k-zero.additivity", "chi is additive on weight decompositions", additivity_suite},
      {"k-zero.resolution-independence", "chi of a resolution depends only on the module", resolution_suite},
      {"fuzz-verify.oracle-soundness", "declared homology matches computed homology", oracle_soundness_suite},
      {"fuzz-verify.chain-map", "generated maps are chain maps", chain_map_suite},
      {"negative-control", "injected violations that must be reported", negative_control_suite},
  };
  return all;
}

const Suite& lookup(const std::string& name) {
  std::string full = resolve_suite(name);
  for (const auto& s : registry())
    if (s.name == full) return s;
  throw ParseError("unknown suite: " + name);
}

Trial run_trial(const Suite& s, const GenParams& p, std::uint64_t seed, bool control) {
  Trial t(p, seed);
  try {
    s.body(t, control);
  } catch (const std::exception& e) {
    t.check(s.name, false, std::string("exception: ") + e.what());
  }
  return t;
}

const Trial::Outcome* first_failure(const Trial& t, const std::string& property) {
  for (const auto& o : t.outcomes())
    if (o.property == property && !o.ok) return &o;
  return nullptr;
}

std::vector<GenParams> smaller(const GenParams& p) {
  std::vector<GenParams> out;
  auto push = [&](auto edit) {
    GenParams q = p;
    edit(q);
    out.push_back(q);
  };
  if (p.max_blocks > 0) push([](GenParams& q) { q.max_blocks /= 2; });
  if (p.max_blocks > 0) push([](GenParams& q) { --q.max_blocks; });
  if (p.max_rank > 1) push([](GenParams& q) { --q.max_rank; });
  if (p.max_degree > p.min_degree) {
    push([](GenParams& q) { --q.max_degree; });
    push([](GenParams& q) { ++q.min_degree; });
  }
  if (p.max_entry > 2) push([](GenParams& q) { --q.max_entry; });
  if (p.conjugation_steps > 0) push([](GenParams& q) { --q.conjugation_steps; });
  return out;
}

TrialFailure shrink(const Suite& s, const GenParams& p, std::uint64_t seed, std::size_t index, const Trial& failing,
                    const Trial::Outcome& outcome, bool control) {
  GenParams best = p;
  Trial best_trial = failing;
  std::string message = outcome.message;
  const std::size_t budget = 64;
  std::size_t runs = 0;
  bool progress = true;
  while (progress && runs < budget) {
    progress = false;
    for (const auto& q : smaller(best)) {
      if (++runs > budget) break;
      Trial t = run_trial(s, q, seed, control);
      if (auto o = first_failure(t, outcome.property)) {
        best = q;
        message = o->message;
        best_trial = std::move(t);
        progress = true;
        break;
      }
    }
  }
  return {outcome.property, index, seed, best, describe(best), message, best_trial.inputs()};
}

}  // namespace

std::string describe(const GenParams& p) {
  std::ostringstream os;
  os << "ring=" << p.ring.name() << " degrees=[" << p.min_degree << "," << p.max_degree << "] max_rank=" << p.max_rank
     << " max_entry=" << p.max_entry << " max_blocks=" << p.max_blocks << " mix=" << p.mix.free << "/" << p.mix.elementary
     << "/" << p.mix.torsion << " steps=" << p.conjugation_steps;
  return os.str();
}

Trial replay_trial(const std::string& name, const GenParams& params, std::uint64_t seed, bool control) {
  return run_trial(lookup(name), params, seed, control);
}

std::vector<SuiteInfo> suites() {
  std::vector<SuiteInfo> out;
  for (const auto& s : registry()) out.push_back({s.name, s.description});
  return out;
}

std::string resolve_suite(const std::string& name) {
  std::vector<std::string> hits;
  for (const auto& s : registry()) {
    if (s.name == name) return name;
    auto dot = s.name.find('.');
    if (dot != std::string::npos && s.name.substr(dot + 1) == name) hits.push_back(s.name);
  }
  if (hits.size() == 1) return hits.front();
  if (hits.empty()) throw ParseError("unknown suite: " + name);
  throw ParseError("ambiguous suite: " + name);
}

const PropertyCount* VerifyReport::property(const std::string& name) const {
  for (const auto& p : properties)
    if (p.name == name) return &p;
  return nullptr;
}

VerifyReport run_suite(const std::string& name, const GenParams& params, std::size_t trials) {
  const Suite& s = lookup(name);
  auto start = std::chrono::steady_clock::now();
  VerifyReport r;
  r.suite = s.name;
  r.seed = params.seed;
  r.trials = trials;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t seed = Rng::derive(params.seed, i);
    bool control = i == 0;
    Trial t = run_trial(s, params, seed, control);
    std::map<std::string, bool> reported;
    for (const auto& o : t.outcomes()) {
      auto [it, fresh] = index.try_emplace(o.property, r.properties.size());
      if (fresh) r.properties.push_back({o.property});
      auto& c = r.properties[it->second];
      (o.ok ? c.passed : c.failed) += 1;
      if (!o.ok && !reported[o.property]) {
        reported[o.property] = true;
        r.failures.push_back(shrink(s, params, seed, i, t, o, control));
      }
    }
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string VerifyReport::to_text(bool with_time) const {
  std::ostringstream os;
  os << "suite: " << suite << "\nseed: " << seed << "\ntrials: " << trials << "\n";
  for (const auto& p : properties)
    os << "property " << p.name << ": " << p.passed << "/" << (p.passed + p.failed) << " passed\n";
  os << "failures: " << failures.size() << "\n";
  for (const auto& f : failures) {
    os << "failure: property=" << f.property << " trial=" << f.trial << " seed=" << f.seed << "\n";
    os << "  params: " << f.params << "\n";
    os << "  message: " << f.message << "\n";
    for (const auto& [label, doc] : f.inputs) os << "  input " << label << ": " << doc << "\n";
  }
  os << "status: " << (passed() ? "pass" : "fail") << "\n";
  if (with_time) os << "wall_seconds: " << wall_seconds << "\n";
  return os.str();
}

JsonValue VerifyReport::to_json(bool with_time) const {
  JsonValue props = JsonValue::array();
  for (const auto& p : properties) {
    JsonValue o = JsonValue::object();
    o.set("name", p.name);
    o.set("passed", static_cast<unsigned long>(p.passed));
    o.set("failed", static_cast<unsigned long>(p.failed));
    props.push(std::move(o));
  }
  JsonValue fails = JsonValue::array();
  for (const auto& f : failures) {
    JsonValue o = JsonValue::object();
    o.set("property", f.property);
    o.set("trial", static_cast<unsigned long>(f.trial));
    o.set("seed", static_cast<unsigned long>(f.seed));
    o.set("params", f.params);
    o.set("message", f.message);
    JsonValue inputs = JsonValue::array();
    for (const auto& [label, doc] : f.inputs) {
      JsonValue in = JsonValue::object();
      in.set("label", label);
      in.set("complex", parse_json(doc));
      inputs.push(std::move(in));
    }
    o.set("inputs", std::move(inputs));
    fails.push(std::move(o));
  }
  JsonValue out = JsonValue::object();
  out.set("suite", suite);
  out.set("seed", static_cast<unsigned long>(seed));
  out.set("trials", static_cast<unsigned long>(trials));
  out.set("properties", std::move(props));
  out.set("failures", std::move(fails));
  out.set("status", passed() ? "pass" : "fail");
  if (with_time) out.set("wall_seconds", std::to_string(wall_seconds));
  return out;
}

}  // namespace chainweight
