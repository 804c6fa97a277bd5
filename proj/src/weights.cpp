#include "chainweight/weights.hpp"

#include <algorithm>

#include "chainweight/errors.hpp"

namespace chainweight {

bool in_w_geq(const ChainComplex& x, int n) {
  HomologyProfile h = homology(x);
  return h.is_acyclic() || h.lowest() >= n;
}

bool in_w_leq(const ChainComplex& x, int n) {
  HomologyProfile h = homology(x);
  if (h.is_acyclic()) return true;
  if (h.highest() > n) return false;
  return h.at(n).is_free();
}

bool in_heart(const ChainComplex& x) { return in_w_leq(x, 0) && in_w_geq(x, 0); }

std::string WeightBounds::to_string() const {
  if (zero) return "zero";
  return "[" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

WeightBounds weight_bounds(const ChainComplex& x) {
  HomologyProfile h = homology(x);
  WeightBounds out;
  if (h.is_acyclic()) return out;
  out.zero = false;
  out.lo = h.lowest();
  out.hi = out.lo;
  for (const auto& [i, g] : h.groups) out.hi = std::max(out.hi, g.is_free() ? i : i + 1);
  return out;
}

ChainComplex brutal_truncation(const ChainComplex& x, int lo, int hi) {
  lo = std::max(lo, x.min_degree());
  hi = std::min(hi, x.max_degree());
  if (lo > hi) return ChainComplex(x.ring(), 0);
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = lo; i <= hi; ++i) {
    ranks.push_back(x.rank(i));
    if (i > lo) diffs.push_back(x.d(i));
  }
  return ChainComplex(x.ring(), lo, std::move(ranks), std::move(diffs));
}


Diagnostics WeightDecomposition::verify() const {
  if (!in_w_leq(a, n)) return Diagnostics::fail(n, "A is not in w<=" + std::to_string(n));
  if (!in_w_geq(b, n + 1)) return Diagnostics::fail(n, "B is not in w>=" + std::to_string(n + 1));
  if (auto d = check_chain_map(i_map); !d) return d;
  if (auto d = check_chain_map(p_map); !d) return d;
  int lo = std::min({x.min_degree(), a.min_degree(), b.min_degree()});
  int hi = std::max({x.max_degree(), a.max_degree(), b.max_degree()});
  for (int k = lo; k <= hi; ++k) {
    if (x.rank(k) != a.rank(k) + b.rank(k)) return Diagnostics::fail(k, "ranks do not add up");
    if (!(p_map.at(k) * i_map.at(k)).is_zero()) return Diagnostics::fail(k, "p ∘ i != 0");
    if (!is_split_mono(i_map.at(k))) return Diagnostics::fail(k, "i is not a split monomorphism");
    if (!is_split_epi(p_map.at(k))) return Diagnostics::fail(k, "p is not a split epimorphism");
  }
  // cone(i) → B, (a, x) ↦ p x
  Cone c = cone(i_map);
  ChainMap q(c.complex, b, [&](int k) {
    Matrix m(x.ring(), b.rank(k), c.complex.rank(k));
    m.paste(0, a.rank(k - 1), p_map.at(k));
    return m;
  });
  if (auto d = check_chain_map(q); !d) return d;
  auto inv = homotopy_inverse(q);
  if (!inv) return Diagnostics::fail(std::nullopt, "cone(i) -> B is not an equivalence");
  return inv->verify();
}

WeightDecomposition weight_decompose(const ChainComplex& x, int n) {
  WeightDecomposition dec;
  dec.n = n;
  dec.x = x;
  dec.a = brutal_truncation(x, x.min_degree(), n);
  dec.b = brutal_truncation(x, n + 1, x.max_degree());
  dec.i_map = ChainMap(dec.a, x, [&](int k) { return Matrix::identity(x.ring(), x.rank(k)); });
  dec.p_map = ChainMap(x, dec.b, [&](int k) { return Matrix::identity(x.ring(), x.rank(k)); });
  if (auto d = dec.verify(); !d) throw InvariantViolation("weight decomposition at " + std::to_string(n) + ": " + d.message);
  return dec;
}

OrthogonalityVerdict check_orthogonality(const ChainComplex& x, const ChainComplex& y, int n) {
  if (!in_w_leq(x, n)) throw UsageError("check_orthogonality: X is not in w<=" + std::to_string(n));
  if (!in_w_geq(y, n + 1)) throw UsageError("check_orthogonality: Y is not in w>=" + std::to_string(n + 1));
  OrthogonalityVerdict v;
  v.group = pi0_hom(x, y);
  v.trivial = v.group.is_zero();
  return v;
}

DecompositionComparison compare_decompositions(const WeightDecomposition& dn, const WeightDecomposition& dm) {
  if (dn.n > dm.n) throw UsageError("compare_decompositions: needs n <= m");
  if (!(dn.x == dm.x)) throw UsageError("compare_decompositions: decompositions of different complexes");
  auto a = solve_lift(dn.a, dm.a, &dm.i_map, nullptr, dn.i_map);
  if (!a) throw InvariantViolation("no map A_n -> A_m over the identity of X");
  auto b = solve_lift(dn.b, dm.b, nullptr, &dn.p_map, dm.p_map);
  if (!b) throw InvariantViolation("no map B_n -> B_m over the identity of X");
  DecompositionComparison out{std::move(a->map), std::move(b->map), std::move(a->witness), std::move(b->witness), false};
  out.unique = pi0_hom(dn.a, shift(dm.b, -1)).is_zero() && pi0_hom(shift(dn.a, 1), dm.b).is_zero();
  return out;
}

HeartSplitting heart_split(const ChainMap& f) {
  if (!in_heart(f.source())) throw UsageError("heart_split: source is not in the heart");
  if (!in_heart(f.target())) throw UsageError("heart_split: target is not in the heart");
  if (!in_heart(cone(f).complex)) throw UsageError("heart_split: cofiber is not in the heart");
  auto lift = solve_lift(f.target(), f.source(), nullptr, &f, ChainMap::identity(f.source()));
  if (!lift) throw InvariantViolation("heart ingression admits no retraction");
  return {std::move(lift->map), std::move(lift->witness)};
}

Strictification strictify_heart(const ChainComplex& x, int n) {
  if (!in_w_leq(x, n) || !in_w_geq(x, n)) throw UsageError("strictify_heart: complex is not of weight " + std::to_string(n));
  ChainComplex f = ChainComplex::concentrated(x.ring(), n, homology_at(x, n).free_rank);
  auto eq = equivalence_between(x, f);
  if (!eq) throw InvariantViolation("weight-" + std::to_string(n) + " complex is not equivalent to its free model");
  return {std::move(f), std::move(*eq)};
}

NegativityVerdict check_negative(const std::vector<ChainComplex>& objects) {
  NegativityVerdict v;
  for (std::size_t s = 0; s < objects.size(); ++s)
    for (std::size_t t = 0; t < objects.size(); ++t) {
      const ChainComplex& a = objects[s];
      const ChainComplex& b = objects[t];
      if (a.is_zero() || b.is_zero()) continue;
      // Hom(S, ΣⁿS')_0 vanishes once n > max(S) - min(S').
      int bound = a.max_degree() - b.min_degree();
      for (int n = 1; n <= bound; ++n) {
        auto g = pi0_hom(a, shift(b, n));
        if (!g.is_zero()) {
          v.negative = false;
          v.failures.push_back({s, t, n, std::move(g)});
        }
      }
    }
  return v;
}

TCotruncation t_cotruncate(const ChainComplex& x, int n) {
  RingSpec ring = x.ring();
  int hi = x.max_degree();
  if (n > hi) return {ChainComplex(ring, 0), ChainMap::zero(ChainComplex(ring, 0), x)};
  if (n < x.min_degree()) return {x, ChainMap::identity(x)};
  Matrix z = kernel_basis(x.d(n));  // X_n × rank Z_n, saturated
  std::vector<std::size_t> ranks{z.cols()};
  std::vector<Matrix> diffs;
  for (int i = n + 1; i <= hi; ++i) {
    ranks.push_back(x.rank(i));
    if (i == n + 1) {
      auto coords = solve(z, x.d(n + 1));
      if (!coords) throw InvariantViolation("boundaries are not cycles in degree " + std::to_string(n));
      diffs.push_back(*coords);
    } else {
      diffs.push_back(x.d(i));
    }
  }
  ChainComplex t(ring, n, std::move(ranks), std::move(diffs));
  ChainMap inc(t, x, [&](int i) { return i == n ? z : Matrix::identity(ring, x.rank(i)); });
  return {std::move(t), std::move(inc)};
}

ChainComplex t_truncate(const ChainComplex& x, int n) { return cone(t_cotruncate(x, n + 1).inclusion).complex; }

bool in_t_geq(const ChainComplex& x, int n) { return is_quasi_iso(t_cotruncate(x, n).inclusion); }

bool in_t_leq(const ChainComplex& x, int n) {
  HomologyProfile h = homology(x);
  return h.is_acyclic() || h.highest() <= n;
}

bool check_left_adjacent(const ChainComplex& x, int n) { return in_t_geq(x, n) == in_w_geq(x, n); }

}  // namespace chainweight
