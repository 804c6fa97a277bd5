#include "chainweight/filtration.hpp"

#include <algorithm>

#include "chainweight/errors.hpp"

namespace chainweight {

namespace {

// [I; 0] in every degree: the basis of `a` is a prefix of that of `b`.
Matrix prefix(RingSpec ring, std::size_t rows, std::size_t cols) {
  Matrix m(ring, rows, cols);
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) m.set(i, i, 1);
  return m;
}

ChainMap prefix_inclusion(const ChainComplex& a, const ChainComplex& b) {
  return ChainMap(a, b, [&](int k) { return prefix(a.ring(), b.rank(k), a.rank(k)); });
}

Homotopy zero_homotopy(const ChainMap& from, const ChainMap& to) {
  const ChainComplex& x = from.source();
  const ChainComplex& y = from.target();
  return Homotopy(from, to, [&](int k) { return Matrix(x.ring(), y.rank(k + 1), x.rank(k)); });
}

std::string level(int k) { return "level " + std::to_string(k) + ": "; }

bool pure(const WeightBounds& b, int k) { return b.zero || (b.lo == k && b.hi == k); }

}  // namespace

const ChainComplex& CellFiltration::stage(int k) const {
  if (k < lo - 1) return stages.front();
  if (k > hi) return stages.back();
  return stages[static_cast<std::size_t>(k - lo + 1)];
}

ChainMap CellFiltration::inclusion(int k) const {
  if (k < lo || k > hi) return ChainMap::identity(stage(k));
  return inclusions[static_cast<std::size_t>(k - lo)];
}

ChainMap CellFiltration::inclusion(int j, int k) const {
  if (j > k) throw UsageError("CellFiltration::inclusion: needs j <= k");
  ChainMap out = ChainMap::identity(stage(j));
  for (int t = std::max(j + 1, lo); t <= std::min(k, hi); ++t) out = compose(inclusion(t), out);
  return out;
}

bool operator==(const CellFiltration& a, const CellFiltration& b) {
  int lo = std::min(a.lo, b.lo) - 1, hi = std::max(a.hi, b.hi);
  for (int k = lo; k <= hi; ++k) {
    if (!(a.stage(k) == b.stage(k))) return false;
    if (k > lo && !(a.inclusion(k) == b.inclusion(k))) return false;
  }
  return true;
}

SplitQuotient level_quotient(const CellFiltration& f, int k) { return split_quotient(f.inclusion(k)); }

CellFiltration skeletal_filtration(const ChainComplex& x) {
  CellFiltration f;
  if (x.min_degree() > x.max_degree()) {
    f.stages.push_back(x);
    return f;
  }
  f.lo = x.min_degree();
  f.hi = x.max_degree();
  for (int k = f.lo - 1; k <= f.hi; ++k) {
    f.stages.push_back(brutal_truncation(x, f.lo, k));
    if (k >= f.lo) f.inclusions.push_back(prefix_inclusion(f.stages[f.stages.size() - 2], f.stages.back()));
  }
  return f;
}

CellFiltration truncate_filtration(const CellFiltration& f, int n) {
  CellFiltration out;
  out.lo = f.lo;
  out.hi = std::max(std::min(f.hi, n), f.lo - 1);
  auto count = static_cast<std::size_t>(out.hi - out.lo + 1);
  out.stages.assign(f.stages.begin(), f.stages.begin() + static_cast<long>(count + 1));
  out.inclusions.assign(f.inclusions.begin(), f.inclusions.begin() + static_cast<long>(count));
  return out;
}

CellFiltration cotruncate_filtration(const CellFiltration& f, int n) {
  CellFiltration out;
  out.hi = f.hi;
  out.lo = std::min(std::max(f.lo, n + 1), f.hi + 1);
  auto skip = static_cast<long>(out.lo - f.lo);
  out.stages.assign(f.stages.begin() + skip, f.stages.end());
  out.inclusions.assign(f.inclusions.begin() + skip, f.inclusions.end());
  return out;
}

Diagnostics verify_cell_filtration(const CellFiltration& f, bool relative) {
  if (f.hi < f.lo - 1) return Diagnostics::fail(std::nullopt, "empty degree range");
  if (f.stages.size() != static_cast<std::size_t>(f.hi - f.lo + 2))
    return Diagnostics::fail(std::nullopt, "expected " + std::to_string(f.hi - f.lo + 2) + " stages");
  if (f.inclusions.size() + 1 != f.stages.size())
    return Diagnostics::fail(std::nullopt, "expected one inclusion per level");
  for (int k = f.lo - 1; k <= f.hi; ++k) {
    const ChainComplex& a = f.stage(k);
    if (!(a.ring() == f.ring())) return Diagnostics::fail(k, level(k) + "ring mismatch");
    if (auto d = validate(a); !d) return Diagnostics::fail(k, level(k) + d.message);
  }
  if (!relative && !is_acyclic(f.limit()))
    return Diagnostics::fail(f.lo - 1, level(f.lo - 1) + "limit stage is not acyclic");
  for (int k = f.lo; k <= f.hi; ++k) {
    const ChainMap& i = f.inclusions[static_cast<std::size_t>(k - f.lo)];
    if (!(i.source() == f.stage(k - 1)) || !(i.target() == f.stage(k)))
      return Diagnostics::fail(k, level(k) + "inclusion does not connect consecutive stages");
    if (auto d = check_chain_map(i); !d) return Diagnostics::fail(k, level(k) + d.message);
    const ChainComplex& a = f.stage(k - 1);
    for (int deg = std::min(a.min_degree(), f.stage(k).min_degree());
         deg <= std::max(a.max_degree(), f.stage(k).max_degree()); ++deg)
      if (!is_split_mono(i.at(deg)))
        return Diagnostics::fail(k, level(k) + "inclusion is not split in degree " + std::to_string(deg));
    WeightBounds w = weight_bounds(level_quotient(f, k).complex);
    if (!pure(w, k)) return Diagnostics::fail(k, level(k) + "quotient has weight " + w.to_string());
  }
  if (!relative)
    for (int k = f.lo - 1; k <= f.hi; ++k)
      if (!in_w_leq(f.stage(k), k)) return Diagnostics::fail(k, level(k) + "stage is not in w<=" + std::to_string(k));
  return Diagnostics::pass();
}

VAcyclicity is_v_acyclic(const CellFiltration& f) {
  VAcyclicity v;
  v.acyclic = is_acyclic(f.colimit());
  if (!v.acyclic) return v;
  for (int k = f.lo - 1; k <= f.hi; ++k) {
    WeightBounds b = weight_bounds(f.stage(k));
    if (!pure(b, k))
      throw InvariantViolation("v-acyclic filtration with stage " + std::to_string(k) + " of weight " + b.to_string());
    v.stage_bounds.push_back(b);
  }
  return v;
}

const ChainMap& FiltrationMap::at(int k) const {
  if (k < lo) return levels.front();
  if (k > hi()) return levels.back();
  return levels[static_cast<std::size_t>(k - lo)];
}

FiltrationMap make_filtration_map(const CellFiltration& source, const CellFiltration& target,
                                  const std::function<Matrix(int, int)>& component) {
  FiltrationMap f;
  f.source = source;
  f.target = target;
  f.lo = std::min(source.lo, target.lo) - 1;
  int hi = std::max(source.hi, target.hi);
  for (int k = f.lo; k <= hi; ++k) {
    ChainMap m(source.stage(k), target.stage(k), [&](int deg) { return component(k, deg); });
    if (auto d = check_chain_map(m); !d) throw UsageError(level(k) + "not a chain map: " + d.message);
    f.levels.push_back(std::move(m));
  }
  for (int k = f.lo + 1; k <= hi; ++k) {
    ChainMap lhs = compose(f.at(k), source.inclusion(k));
    ChainMap rhs = compose(target.inclusion(k), f.at(k - 1));
    if (lhs == rhs) {
      f.squares.push_back(zero_homotopy(lhs, rhs));
      continue;
    }
    auto h = homotopy_between(lhs, rhs);
    if (!h) throw UsageError(level(k) + "square does not commute up to homotopy");
    f.strict = false;
    f.squares.push_back(std::move(*h));
  }
  return f;
}

ChainMap latching_map(const FiltrationMap& f, int i, int j) {
  if (i >= j) throw UsageError("latching_map: needs i < j");
  const ChainComplex& ai = f.source.stage(i);
  const ChainComplex& aj = f.source.stage(j);
  const ChainComplex& bi = f.target.stage(i);
  const ChainComplex& bj = f.target.stage(j);
  ChainMap ia = f.source.inclusion(i, j);
  ChainMap ib = f.target.inclusion(i, j);
  ChainMap lhs = compose(f.at(j), ia);
  ChainMap rhs = compose(ib, f.at(i));
  Homotopy h;
  if (lhs == rhs) {
    h = zero_homotopy(lhs, rhs);
  } else {
    auto found = homotopy_between(lhs, rhs);
    if (!found) throw UsageError("latching_map: square does not commute up to homotopy");
    h = std::move(*found);
  }
  // A_j ∪_{A_i} B_i = cone(A_i → B_i ⊕ A_j, a ↦ (f a, -ι a)); (a, b, a') ↦ h a + ι b + f a'.
  ChainComplex sum = direct_sum(bi, aj);
  ChainMap phi(ai, sum, [&](int k) { return Matrix::vstack(f.at(i).at(k), -ia.at(k)); });
  Cone c = cone(phi);
  return ChainMap(c.complex, bj, [&](int k) {
    return Matrix::hstack(Matrix::hstack(h.at(k - 1), ib.at(k)), f.at(j).at(k));
  });
}

bool is_ingression(const FiltrationMap& f) {
  for (int i = f.lo; i <= f.hi(); ++i)
    for (int j = i + 1; j <= f.hi(); ++j) {
      WeightBounds w = weight_bounds(cone(latching_map(f, i, j)).complex);
      if (!w.zero && (w.lo < i + 1 || w.hi > j)) return false;
    }
  return true;
}

MappingCylinder mapping_cylinder_filtration(const FiltrationMap& f) {
  if (!f.strict) throw UsageError("mapping_cylinder_filtration: the levels must commute strictly");
  const CellFiltration& a = f.source;
  const CellFiltration& b = f.target;
  RingSpec ring = a.ring();
  MappingCylinder out;
  CellFiltration& m = out.filtration;
  m.lo = f.lo + 1;
  m.hi = f.hi() + 1;
  // (Mf)_i = cone(A_{i-1} → B_i ⊕ A_i, a ↦ (ι f a, -ι a)), degree k: A_{i-1,k-1} ⊕ B_{i,k} ⊕ A_{i,k}.
  for (int i = m.lo - 1; i <= m.hi; ++i) {
    ChainMap ia = a.inclusion(i);
    ChainMap fb = compose(b.inclusion(i), f.at(i - 1));
    ChainMap j(a.stage(i - 1), direct_sum(b.stage(i), a.stage(i)),
               [&](int k) { return Matrix::vstack(fb.at(k), -ia.at(k)); });
    m.stages.push_back(cone(j).complex);
  }
  for (int i = m.lo; i <= m.hi; ++i) {
    ChainMap prev = a.inclusion(i - 1);
    ChainMap ia = a.inclusion(i);
    ChainMap ib = b.inclusion(i);
    m.inclusions.emplace_back(m.stage(i - 1), m.stage(i), [&](int k) {
      return Matrix::block_diag(Matrix::block_diag(prev.at(k - 1), ib.at(k)), ia.at(k));
    });
  }
  auto a_to_m = [&](int i, int k) {
    Matrix out(ring, m.stage(i).rank(k), a.stage(i).rank(k));
    out.paste(a.stage(i - 1).rank(k - 1) + b.stage(i).rank(k), 0, Matrix::identity(ring, a.stage(i).rank(k)));
    return out;
  };
  auto b_to_m = [&](int i, int k) {
    Matrix out(ring, m.stage(i).rank(k), b.stage(i).rank(k));
    out.paste(a.stage(i - 1).rank(k - 1), 0, Matrix::identity(ring, b.stage(i).rank(k)));
    return out;
  };
  out.ingression = make_filtration_map(a, m, a_to_m);
  out.equivalence = make_filtration_map(b, m, b_to_m);
  auto inv = homotopy_inverse(out.equivalence.at(m.hi));
  if (!inv) throw InvariantViolation("mapping cylinder: B → Mf is not an equivalence on colimits");
  out.colimit_equivalence = std::move(*inv);
  return out;
}

Diagnostics check_wedge_formula(const FiltrationMap& f, const MappingCylinder& m) {
  const CellFiltration& mf = m.filtration;
  for (int k = mf.lo; k <= mf.hi; ++k) {
    HomologyProfile expected = direct_sum(
        direct_sum(homology(level_quotient(f.source, k).complex), homology(level_quotient(f.target, k).complex)),
        homology(level_quotient(f.source, k - 1).complex).shifted(1));
    HomologyProfile got = homotopy_classify(level_quotient(mf, k).complex);
    if (!(got == expected))
      return Diagnostics::fail(k, level(k) + "quotient " + got.to_string() + " but wedge gives " + expected.to_string());
  }
  return Diagnostics::pass();
}

int connectivity(const ChainMap& f) {
  HomologyProfile h = homology(cone(f).complex);
  if (h.is_acyclic()) return kInfiniteConnectivity;
  return h.lowest() - 1;
}

std::string connectivity_string(int c) { return c == kInfiniteConnectivity ? "infinity" : std::to_string(c); }

ChainMap ConnectedFactorization::composite() const {
  ChainMap out = ChainMap::identity(stages.front());
  for (const ChainMap& i : inclusions) out = compose(i, out);
  return out;
}

Diagnostics ConnectedFactorization::verify(const ChainMap& f) const {
  if (stages.empty() || inclusions.size() + 1 != stages.size())
    return Diagnostics::fail(std::nullopt, "malformed chain of stages");
  if (!(stages.front() == f.source())) return Diagnostics::fail(n, "first stage is not the source of f");
  for (std::size_t t = 0; t < inclusions.size(); ++t) {
    int k = n + static_cast<int>(t) + 1;
    const ChainMap& i = inclusions[t];
    if (auto d = validate(stages[t + 1]); !d) return Diagnostics::fail(k, level(k) + d.message);
    if (!(i.source() == stages[t]) || !(i.target() == stages[t + 1]))
      return Diagnostics::fail(k, level(k) + "inclusion does not connect consecutive stages");
    if (auto d = check_chain_map(i); !d) return Diagnostics::fail(k, level(k) + d.message);
    WeightBounds w = weight_bounds(split_quotient(i).complex);
    if (!pure(w, k)) return Diagnostics::fail(k, level(k) + "quotient has weight " + w.to_string());
  }
  if (!(equivalence.forth.source() == stages.back()) || !(equivalence.forth.target() == f.target()))
    return Diagnostics::fail(std::nullopt, "equivalence does not run from the last stage to the target");
  if (auto d = equivalence.verify(); !d) return d;
  if (!(witness.from() == compose(equivalence.forth, composite())) || !(witness.to() == f))
    return Diagnostics::fail(std::nullopt, "witness does not compare the recomposition with f");
  return witness.verify();
}

ConnectedFactorization factor_connected_map(const ChainMap& f, int n) {
  int c = connectivity(f);
  if (c < n)
    throw MathNegative("map is not " + std::to_string(n) + "-connected (connectivity " + connectivity_string(c) + ")");
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  RingSpec ring = x.ring();
  StandardForm sf = diagonalize(cone(f).complex);
  const ChainComplex& s = sf.complex;
  // back : S → cone(f) has components (τ, κ) with d τ + τ d = 0 and d κ - κ d = f τ.
  auto tau = [&](int k) { return sf.back.at(k).block(0, 0, x.rank(k - 1), s.rank(k)); };
  auto kappa = [&](int k) { return sf.back.at(k).block(x.rank(k - 1), 0, y.rank(k), s.rank(k)); };

  ConnectedFactorization out;
  out.n = n;
  int top = std::max(n, s.max_degree());
  int lo = x.min_degree(), hi = x.max_degree();
  if (s.min_degree() <= s.max_degree()) {
    if (lo > hi) lo = s.min_degree(), hi = s.max_degree();
    lo = std::min(lo, s.min_degree());
    hi = std::max(hi, s.max_degree());
  }
  out.stages.push_back(x);
  for (int k = n + 1; k <= top; ++k) {
    auto cells = [&](int deg) { return deg <= k ? s.rank(deg) : std::size_t{0}; };
    std::vector<std::size_t> ranks;
    std::vector<Matrix> diffs;
    for (int deg = lo; deg <= hi; ++deg) {
      ranks.push_back(x.rank(deg) + cells(deg));
      if (deg == lo) continue;
      Matrix d(ring, x.rank(deg - 1) + cells(deg - 1), x.rank(deg) + cells(deg));
      d.paste(0, 0, x.d(deg));
      if (cells(deg) > 0) {
        d.paste(0, x.rank(deg), tau(deg));
        d.paste(x.rank(deg - 1), x.rank(deg), s.d(deg).block(0, 0, cells(deg - 1), cells(deg)));
      }
      diffs.push_back(std::move(d));
    }
    out.stages.emplace_back(ring, lo, std::move(ranks), std::move(diffs));
    out.inclusions.push_back(prefix_inclusion(out.stages[out.stages.size() - 2], out.stages.back()));
  }
  const ChainComplex& last = out.stages.back();
  ChainMap g(last, y, [&](int k) {
    Matrix m(ring, y.rank(k), last.rank(k));
    m.paste(0, 0, f.at(k));
    if (last.rank(k) > x.rank(k)) m.paste(0, x.rank(k), kappa(k));
    return m;
  });
  auto inv = homotopy_inverse(g);
  if (!inv) throw InvariantViolation("twisted sum does not map to the target by an equivalence");
  out.equivalence = std::move(*inv);
  out.witness = zero_homotopy(compose(out.equivalence.forth, out.composite()), f);
  return out;
}

ConnectivityVerdict compose_connectivity_check(const ChainMap& f, const ChainMap& g) {
  ConnectivityVerdict v{connectivity(f), connectivity(g), connectivity(compose(g, f))};
  if (v.composite < std::min(v.f, v.g))
    throw InvariantViolation("composite connectivity " + connectivity_string(v.composite) + " below " +
                             connectivity_string(std::min(v.f, v.g)));
  return v;
}

}  // namespace chainweight
