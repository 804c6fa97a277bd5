#include "chainweight/homotopy.hpp"

#include <numeric>

#include "chainweight/errors.hpp"

namespace chainweight {

namespace {

Matrix drop_row(const Matrix& m, std::size_t r) {
  std::vector<std::size_t> rows, cols(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (i != r) rows.push_back(i);
  std::iota(cols.begin(), cols.end(), 0);
  return m.select(rows, cols);
}

Matrix drop_col(const Matrix& m, std::size_t c) {
  std::vector<std::size_t> rows(m.rows()), cols;
  std::iota(rows.begin(), rows.end(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (j != c) cols.push_back(j);
  return m.select(rows, cols);
}

void require_valid(const Diagnostics& d, const std::string& what) {
  if (!d) throw InvariantViolation(what + ": " + d.message);
}

}  // namespace

ModulePresentation pi0_hom_direct(const ChainComplex& x, const ChainComplex& y) {
  HomComplex hom(x, y);
  return homology_at(hom.complex(), 0);
}

ModulePresentation pi0_hom(const ChainComplex& x, const ChainComplex& y) {
  require_same_ring(x.ring(), y.ring(), "pi0_hom");
  return pi0_hom_direct(minimize(x).complex, minimize(y).complex);
}

std::optional<Homotopy> homotopy_between(const ChainMap& f, const ChainMap& g) {
  ChainMap diff = f - g;
  HomComplex hom(f.source(), f.target());
  Matrix target = hom.flatten(diff);
  auto w = solve(hom.complex().d(1), target);
  if (!w) return std::nullopt;
  Homotopy h(f, g, [&](int i) { return hom.component(1, *w, i); });
  require_valid(h.verify(), "homotopy solve");
  return h;
}

std::optional<Homotopy> nullhomotopy(const ChainMap& f) {
  return homotopy_between(f, ChainMap::zero(f.source(), f.target()));
}

std::optional<Homotopy> contract(const ChainComplex& x) {
  RingSpec ring = x.ring();
  int lo = x.min_degree(), hi = x.max_degree();
  std::vector<Matrix> s;  // s[k] : X_{lo+k} → X_{lo+k+1}
  for (int i = lo; i <= hi; ++i) {
    Matrix rhs = Matrix::identity(ring, x.rank(i));
    if (i > lo) rhs = rhs - s.back() * x.d(i);
    auto si = solve(x.d(i + 1), rhs);
    if (!si) return std::nullopt;
    s.push_back(std::move(*si));
  }
  Homotopy h(ChainMap::identity(x), ChainMap::zero(x, x), [&](int i) { return s[static_cast<std::size_t>(i - lo)]; });
  require_valid(h.verify(), "contraction");
  return h;
}

Matrix composition_operator(const HomComplex& from, const HomComplex& to, int n, const ChainMap* post,
                            const ChainMap* pre) {
  RingSpec ring = from.source().ring();
  std::size_t dim = from.complex().rank(n);
  Matrix op(ring, to.complex().rank(n), dim);
  Matrix e(ring, dim, 1);
  for (std::size_t j = 0; j < dim; ++j) {
    e.set(j, 0, 1);
    Matrix col = to.flatten(n, [&](int i) {
      Matrix m = pre ? from.component(n, e, i) * pre->at(i) : from.component(n, e, i);
      return post ? post->at(i + n) * m : m;
    });
    op.paste(0, j, col);
    e.set(j, 0, 0);
  }
  return op;
}

std::optional<Lift> solve_lift(const ChainComplex& p, const ChainComplex& q, const ChainMap* post,
                               const ChainMap* pre, const ChainMap& target) {
  HomComplex maps(p, q);
  HomComplex outer(target.source(), target.target());
  // [[∂_0, 0], [L, -∂_1]] (φ; k) = (0; target)
  Matrix L = composition_operator(maps, outer, 0, post, pre);
  const Matrix& d0 = maps.complex().d(0);
  const Matrix& d1 = outer.complex().d(1);
  RingSpec ring = p.ring();
  std::size_t nphi = maps.complex().rank(0), nk = outer.complex().rank(1);
  Matrix sys(ring, d0.rows() + L.rows(), nphi + nk);
  sys.paste(0, 0, d0);
  sys.paste(d0.rows(), 0, L);
  sys.paste(d0.rows(), nphi, -d1);
  Matrix rhs(ring, sys.rows(), 1);
  rhs.paste(d0.rows(), 0, outer.flatten(target));
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  Matrix phi = sol->block(0, 0, nphi, 1);
  Matrix k = sol->block(nphi, 0, nk, 1);
  ChainMap map = maps.to_map(phi);
  ChainMap outer_map = post ? compose(*post, map) : map;
  if (pre) outer_map = compose(outer_map, *pre);
  Homotopy w(outer_map, target, [&](int i) { return outer.component(1, k, i); });
  require_valid(check_chain_map(map), "lift");
  require_valid(w.verify(), "lift witness");
  return Lift{std::move(map), std::move(w)};
}

Homotopy transport(const ChainMap& post, const Homotopy& h, const ChainMap& pre) {
  return Homotopy(compose(post, compose(h.from(), pre)), compose(post, compose(h.to(), pre)),
                  [&](int i) { return post.at(i + 1) * h.at(i) * pre.at(i); });
}

Homotopy concat(const Homotopy& a, const Homotopy& b) {
  if (!(a.to() == b.from())) throw UsageError("concat: homotopies do not share an endpoint");
  return Homotopy(a.from(), b.to(), [&](int i) { return a.at(i) + b.at(i); });
}

Homotopy reversed(const Homotopy& h) {
  return Homotopy(h.to(), h.from(), [&](int i) { return -h.at(i); });
}

Diagnostics HomotopyEquivalence::verify() const {
  if (auto d = check_chain_map(forth); !d) return d;
  if (auto d = check_chain_map(back); !d) return d;
  if (!(back_forth.from() == compose(back, forth)) || !(back_forth.to() == ChainMap::identity(forth.source())))
    return Diagnostics::fail(std::nullopt, "back_forth witnesses the wrong pair of maps");
  if (!(forth_back.from() == compose(forth, back)) || !(forth_back.to() == ChainMap::identity(forth.target())))
    return Diagnostics::fail(std::nullopt, "forth_back witnesses the wrong pair of maps");
  if (auto d = back_forth.verify(); !d) return d;
  return forth_back.verify();
}

std::optional<HomotopyEquivalence> homotopy_inverse(const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  Cone c = cone(f);
  auto s = contract(c.complex);
  if (!s) return std::nullopt;
  // s_i : X_{i-1} ⊕ Y_i → X_i ⊕ Y_{i+1} has blocks [[α, γ], [β, δ]].
  ChainMap g(y, x, [&](int i) { return -s->at(i).block(0, x.rank(i - 1), x.rank(i), y.rank(i)); });
  Homotopy gf(compose(g, f), ChainMap::identity(x),
              [&](int j) { return s->at(j + 1).block(0, 0, x.rank(j + 1), x.rank(j)); });
  Homotopy fg(compose(f, g), ChainMap::identity(y),
              [&](int i) { return -s->at(i).block(x.rank(i), x.rank(i - 1), y.rank(i + 1), y.rank(i)); });
  HomotopyEquivalence eq{f, std::move(g), std::move(gf), std::move(fg)};
  require_valid(eq.verify(), "homotopy inverse");
  return eq;
}

bool is_quasi_iso(const ChainMap& f) { return is_acyclic(cone(f).complex); }

bool is_homotopy_equivalence(const ChainMap& f, bool certify) {
  bool qi = is_quasi_iso(f);
  if (!certify) return qi;
  bool inv = homotopy_inverse(f).has_value();
  if (inv != qi) throw InvariantViolation("quasi-isomorphism and homotopy equivalence disagree");
  return inv;
}

// ---------------------------------------------------------------------------

MinimalModel minimize(const ChainComplex& x) {
  RingSpec ring = x.ring();
  int lo = x.min_degree();
  std::size_t n = x.ranks().size();
  // Per degree k (degree lo+k): current differential dd[k] = d_{lo+k} for k in
  // [0, n], forth F[k], back G[k], homotopy H[k] : X_{lo+k} → X_{lo+k+1}.
  std::vector<Matrix> dd, F, G, H;
  for (std::size_t k = 0; k <= n; ++k) dd.push_back(x.d(lo + static_cast<int>(k)));
  for (std::size_t k = 0; k < n; ++k) {
    int i = lo + static_cast<int>(k);
    F.push_back(Matrix::identity(ring, x.rank(i)));
    G.push_back(Matrix::identity(ring, x.rank(i)));
    H.emplace_back(ring, x.rank(i + 1), x.rank(i));
  }

  for (;;) {
    bool found = false;
    std::size_t k = 0, a = 0, b = 0;
    for (std::size_t kk = 1; kk < n && !found; ++kk)
      for (std::size_t r = 0; r < dd[kk].rows() && !found; ++r)
        for (std::size_t c = 0; c < dd[kk].cols(); ++c)
          if (ring.is_unit(dd[kk](r, c))) {
            k = kk, a = r, b = c, found = true;
            break;
          }
    if (!found) break;

    // Cancel the unit u at (a, b) of d_i, i = lo+k: row a lives in degree i-1,
    // column b in degree i.
    const Matrix d = dd[k];
    mpz_class uinv = ring.inverse(d(a, b));

    // Homotopy contribution G_i (-u⁻¹ e_b e_aᵀ) F_{i-1}, taken before updates.
    {
      Matrix gcol = G[k].col(b);
      Matrix frow = F[k - 1].block(a, 0, 1, F[k - 1].cols());
      H[k - 1] = H[k - 1] + (gcol * frow).scaled(-uinv);
    }

    Matrix nd = d;
    for (std::size_t y = 0; y < d.rows(); ++y) {
      if (y == a || d(y, b) == 0) continue;
      mpz_class factor = -d(y, b) * uinv;
      nd.add_row_multiple(y, a, factor);
      F[k - 1].add_row_multiple(y, a, factor);
    }
    for (std::size_t c = 0; c < d.cols(); ++c) {
      if (c == b || d(a, c) == 0) continue;
      G[k].add_col_multiple(c, b, -uinv * d(a, c));
    }
    dd[k] = drop_col(drop_row(nd, a), b);
    dd[k + 1] = drop_row(dd[k + 1], b);
    dd[k - 1] = drop_col(dd[k - 1], a);
    F[k - 1] = drop_row(F[k - 1], a);
    F[k] = drop_row(F[k], b);
    G[k] = drop_col(G[k], b);
    G[k - 1] = drop_col(G[k - 1], a);
  }

  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (std::size_t k = 0; k < n; ++k) {
    ranks.push_back(F[k].rows());
    if (k > 0) diffs.push_back(dd[k]);
  }
  ChainComplex xm = ChainComplex(ring, lo, std::move(ranks), std::move(diffs)).trimmed();
  auto idx = [lo](int i) { return static_cast<std::size_t>(i - lo); };
  ChainMap forth(x, xm, [&](int i) { return F[idx(i)]; });
  ChainMap back(xm, x, [&](int i) { return G[idx(i)]; });
  Homotopy h(compose(back, forth), ChainMap::identity(x), [&](int i) { return H[idx(i)]; });
  return {std::move(xm), std::move(forth), std::move(back), std::move(h)};
}

// ---------------------------------------------------------------------------

ChainComplex standard_complex(const HomologyProfile& profile) {
  RingSpec ring = profile.ring;
  if (profile.is_acyclic()) return ChainComplex(ring, 0);
  int lo = profile.lowest(), hi = profile.highest();
  if (!profile.at(hi).torsion.empty()) ++hi;
  auto free_of = [&](int i) { return profile.at(i).free_rank; };
  auto tors_of = [&](int i) { return profile.at(i).torsion.size(); };
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(free_of(i) + tors_of(i) + tors_of(i - 1));
    if (i == lo) continue;
    Matrix d(ring, ranks[ranks.size() - 2], ranks.back());
    auto t = profile.at(i - 1).torsion;
    for (std::size_t j = 0; j < t.size(); ++j) d.set(free_of(i - 1) + j, free_of(i) + tors_of(i) + j, t[j]);
    diffs.push_back(std::move(d));
  }
  return ChainComplex(ring, lo, std::move(ranks), std::move(diffs));
}

StandardForm diagonalize(const ChainComplex& x) {
  RingSpec ring = x.ring();
  int lo = x.min_degree(), hi = x.max_degree();
  StandardForm out;
  out.profile = homology(x);
  out.complex = standard_complex(out.profile);
  out.lo = lo;
  if (lo > hi) {
    out.forth = ChainMap::zero(x, out.complex);
    out.back = ChainMap::zero(out.complex, x);
    out.homotopy = Homotopy(compose(out.back, out.forth), ChainMap::identity(x), [&](int) { return Matrix(); });
    return out;
  }
  std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  auto idx = [lo](int i) { return static_cast<std::size_t>(i - lo); };

  // SNF of every differential: columns of V split X_i into a complement W_i
  // (first r_i) and the cycles Z_i (the rest).
  std::vector<SmithFormWithInverses> snf;
  std::vector<std::size_t> r(n), z(n);
  for (int i = lo; i <= hi; ++i) {
    snf.push_back(smith_normal_form_with_inverses(x.d(i)));
    r[idx(i)] = snf.back().form.rank();
    z[idx(i)] = x.rank(i) - r[idx(i)];
  }
  // M_i : W_i → Z_{i-1} in those coordinates, and its own SNF P M Q = E.
  std::vector<Matrix> P(n + 1), P_inv(n + 1), Q(n), Q_inv(n);
  std::vector<std::vector<mpz_class>> divisors(n + 1);
  for (int i = lo; i <= hi + 1; ++i) {
    std::size_t k = idx(i);
    if (i == lo || i == hi + 1) {
      if (i == lo) Q[k] = Q_inv[k] = Matrix::identity(ring, 0);
      std::size_t below = i == lo ? 0 : z[k - 1];
      if (i == hi + 1) P[k] = P_inv[k] = Matrix::identity(ring, below);
      continue;
    }
    const SmithFormWithInverses& below = snf[k - 1];
    Matrix full = below.V_inv * x.d(i) * snf[k].form.V;
    Matrix m = full.block(r[k - 1], 0, z[k - 1], r[k]);
    if (!full.block(0, 0, r[k - 1], r[k]).is_zero())
      throw InvariantViolation("boundaries are not cycles in degree " + std::to_string(i - 1));
    auto sm = smith_normal_form_with_inverses(m);
    if (sm.form.rank() != r[k]) throw InvariantViolation("restricted differential is not injective");
    P[k] = sm.form.U, P_inv[k] = sm.U_inv;
    Q[k] = sm.form.V, Q_inv[k] = sm.V_inv;
    divisors[k] = sm.form.elementary_divisors;
  }
  for (int i = lo; i <= hi; ++i) {
    std::size_t k = idx(i);
    const auto& s = snf[k];
    Matrix vinv_w = s.V_inv.block(0, 0, r[k], x.rank(i));
    Matrix vinv_z = s.V_inv.block(r[k], 0, z[k], x.rank(i));
    Matrix v_w = s.form.V.block(0, 0, x.rank(i), r[k]);
    Matrix v_z = s.form.V.block(0, r[k], x.rank(i), z[k]);
    out.phi.push_back(Matrix::vstack(P[k + 1] * vinv_z, Q_inv[k] * vinv_w));
    out.psi.push_back(Matrix::hstack(v_z * P_inv[k + 1], v_w * Q[k]));
  }

  // Positions in the new coordinates of degree i: [targets of d_{i+1}: units
  // then torsion][free cycles][sources of d_i: units then torsion].
  auto units = [&](std::size_t k) {
    std::size_t u = 0;
    for (const auto& e : divisors[k])
      if (ring.is_unit(e)) ++u;
    return u;
  };
  std::vector<std::size_t> u(n + 1);
  for (std::size_t k = 0; k <= n; ++k) u[k] = units(k);
  out.unit_pieces.assign(n, 0);
  for (std::size_t k = 0; k < n; ++k) out.unit_pieces[k] = u[k + 1];

  std::vector<Matrix> proj;  // S_i ← new coordinates of X_i
  for (int i = lo; i <= hi; ++i) {
    std::size_t k = idx(i);
    Matrix p(ring, out.complex.rank(i), x.rank(i));
    std::size_t targets = k + 1 < n ? r[k + 1] : 0, row = 0;
    for (std::size_t j = targets; j < z[k]; ++j) p.set(row++, j, 1);       // free
    for (std::size_t j = u[k + 1]; j < targets; ++j) p.set(row++, j, 1);  // torsion targets
    for (std::size_t j = u[k]; j < r[k]; ++j) p.set(row++, z[k] + j, 1);  // torsion sources
    if (row != p.rows()) throw InvariantViolation("standard form size mismatch in degree " + std::to_string(i));
    proj.push_back(std::move(p));
  }
  out.forth = ChainMap(x, out.complex, [&](int i) { return proj[idx(i)] * out.phi[idx(i)]; });
  out.back = ChainMap(out.complex, x, [&](int i) { return out.psi[idx(i)] * proj[idx(i)].transpose(); });
  out.homotopy = Homotopy(compose(out.back, out.forth), ChainMap::identity(x), [&](int i) {
    std::size_t k = idx(i);
    Matrix h(ring, x.rank(i + 1), x.rank(i));
    if (k + 1 >= n) return h;
    // unit target j of degree i back to its source in degree i+1
    for (std::size_t j = 0; j < u[k + 1]; ++j) h.set(z[k + 1] + j, j, ring.inverse(divisors[k + 1][j]));
    return (out.psi[k + 1] * h * out.phi[k]).scaled(-1);
  });
  return out;
}

HomologyProfile homotopy_classify(const ChainComplex& x) { return homology(x); }

std::optional<HomotopyEquivalence> equivalence_between(const ChainComplex& x, const ChainComplex& y) {
  require_same_ring(x.ring(), y.ring(), "equivalence_between");
  StandardForm sx = diagonalize(x), sy = diagonalize(y);
  if (!(sx.profile == sy.profile)) return std::nullopt;
  ChainMap forth = compose(sy.back, sx.forth);
  ChainMap back = compose(sx.back, sy.forth);
  Homotopy bf(compose(back, forth), ChainMap::identity(x), [&](int i) { return sx.homotopy.at(i); });
  Homotopy fb(compose(forth, back), ChainMap::identity(y), [&](int i) { return sy.homotopy.at(i); });
  HomotopyEquivalence eq{std::move(forth), std::move(back), std::move(bf), std::move(fb)};
  require_valid(eq.verify(), "equivalence between equal profiles");
  return eq;
}

// ---------------------------------------------------------------------------

Diagnostics AcyclicSplitting::verify(const ChainComplex& x) const {
  for (int i = x.min_degree(); i <= x.max_degree(); ++i) {
    std::size_t k = static_cast<std::size_t>(i - lo);
    if (!(phi[k] * psi[k]).is_identity() || !(psi[k] * phi[k]).is_identity())
      return Diagnostics::fail(i, "change of basis is not invertible");
    if (elementary.rank(i) != x.rank(i)) return Diagnostics::fail(i, "elementary pieces miss a rank");
    if (i > x.min_degree() && !(phi[k - 1] * x.d(i) * psi[k] == elementary.d(i)))
      return Diagnostics::fail(i, "differential is not elementary in the new basis");
  }
  return contraction.verify();
}

AcyclicSplitting split_acyclic(const ChainComplex& x) {
  HomologyProfile h = homology(x);
  if (!h.is_acyclic()) {
    int i = h.lowest();
    throw MathNegative("complex is not acyclic: H_" + std::to_string(i) + " = " + h.at(i).to_string(x.ring()));
  }
  StandardForm sf = diagonalize(x);
  AcyclicSplitting out;
  out.lo = x.min_degree();
  out.phi = sf.phi;
  out.psi = sf.psi;
  RingSpec ring = x.ring();
  int lo = x.min_degree(), hi = x.max_degree();
  // Degree i holds targets of the pieces from i+1, then sources of those into i-1.
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    std::size_t k = static_cast<std::size_t>(i - lo);
    std::size_t up = sf.unit_pieces[k];  // pieces i+1 → i
    std::size_t down = k > 0 ? sf.unit_pieces[k - 1] : 0;
    ranks.push_back(up + down);
    if (up) out.pieces.emplace_back(i + 1, up);
    if (k == 0) continue;
    Matrix d(ring, ranks[k - 1], ranks[k]);
    for (std::size_t j = 0; j < down; ++j) d.set(j, up + j, 1);
    diffs.push_back(std::move(d));
  }
  out.elementary = ChainComplex(ring, lo, std::move(ranks), std::move(diffs));
  auto s = contract(x);
  if (!s) throw InvariantViolation("acyclic complex admits no contraction");
  out.contraction = std::move(*s);
  if (auto d = out.verify(x); !d) throw InvariantViolation("acyclic splitting: " + d.message);
  return out;
}

}  // namespace chainweight
