#include "chainweight/constructions.hpp"

#include <algorithm>
#include <map>

#include "chainweight/errors.hpp"

namespace chainweight {

namespace {

struct Span {
  int lo, hi;
};

// Union of the supports of the given complexes, ignoring empty ones, after
// offsetting each by the paired amount.
Span support(std::initializer_list<std::pair<const ChainComplex*, int>> parts) {
  Span s{0, -1};
  bool any = false;
  for (auto [c, off] : parts) {
    if (c->min_degree() > c->max_degree()) continue;
    int lo = c->min_degree() + off, hi = c->max_degree() + off;
    if (!any) {
      s = {lo, hi};
      any = true;
    } else {
      s.lo = std::min(s.lo, lo);
      s.hi = std::max(s.hi, hi);
    }
  }
  return s;
}

// Builds a complex on [lo, hi] from per-degree ranks and differentials.
ChainComplex assemble(RingSpec ring, Span s, const std::function<std::size_t(int)>& rank,
                      const std::function<Matrix(int)>& diff) {
  if (s.lo > s.hi) return ChainComplex(ring, 0);
  std::vector<std::size_t> ranks;
  std::vector<Matrix> diffs;
  for (int i = s.lo; i <= s.hi; ++i) {
    ranks.push_back(rank(i));
    if (i > s.lo) diffs.push_back(diff(i));
  }
  return ChainComplex(ring, s.lo, std::move(ranks), std::move(diffs));
}

}  // namespace

ChainComplex change_ring(const ChainComplex& x, const RingSpec& ring) {
  if (ring == x.ring()) return x;
  if (x.ring().is_field()) throw UsageError("cannot change ring of an " + x.ring().name() + " complex to " + ring.name());
  std::vector<Matrix> diffs;
  for (int i = x.min_degree() + 1; i <= x.max_degree(); ++i) {
    const Matrix& d = x.d(i);
    diffs.emplace_back(ring, d.rows(), d.cols(), d.entries());
  }
  return ChainComplex(ring, x.min_degree(), x.ranks(), diffs);
}

ChainComplex shift(const ChainComplex& x, int k) {
  if (x.min_degree() > x.max_degree()) return ChainComplex(x.ring(), x.min_degree() + k);
  mpz_class sign = (k % 2 == 0) ? 1 : -1;
  return assemble(
      x.ring(), {x.min_degree() + k, x.max_degree() + k}, [&](int i) { return x.rank(i - k); },
      [&](int i) { return x.d(i - k).scaled(sign); });
}

ChainMap shift(const ChainMap& f, int k) {
  return ChainMap(shift(f.source(), k), shift(f.target(), k), [&](int i) { return f.at(i - k); });
}

ChainComplex direct_sum(const ChainComplex& x, const ChainComplex& y) {
  require_same_ring(x.ring(), y.ring(), "direct_sum");
  return assemble(
      x.ring(), support({{&x, 0}, {&y, 0}}), [&](int i) { return x.rank(i) + y.rank(i); },
      [&](int i) { return Matrix::block_diag(x.d(i), y.d(i)); });
}

ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
  return ChainMap(direct_sum(f.source(), g.source()), direct_sum(f.target(), g.target()),
                  [&](int i) { return Matrix::block_diag(f.at(i), g.at(i)); });
}

ChainMap summand_inclusion(const ChainComplex& x, const ChainComplex& y, bool second) {
  ChainComplex s = direct_sum(x, y);
  const ChainComplex& part = second ? y : x;
  return ChainMap(part, s, [&](int i) {
    Matrix m(x.ring(), s.rank(i), part.rank(i));
    m.paste(second ? x.rank(i) : 0, 0, Matrix::identity(x.ring(), part.rank(i)));
    return m;
  });
}

ChainMap summand_projection(const ChainComplex& x, const ChainComplex& y, bool second) {
  ChainComplex s = direct_sum(x, y);
  const ChainComplex& part = second ? y : x;
  return ChainMap(s, part, [&](int i) {
    Matrix m(x.ring(), part.rank(i), s.rank(i));
    m.paste(0, second ? x.rank(i) : 0, Matrix::identity(x.ring(), part.rank(i)));
    return m;
  });
}

Cone cone(const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  RingSpec ring = x.ring();
  ChainComplex c = assemble(
      ring, support({{&x, 1}, {&y, 0}}), [&](int i) { return x.rank(i - 1) + y.rank(i); },
      [&](int i) {
        Matrix m(ring, x.rank(i - 2) + y.rank(i - 1), x.rank(i - 1) + y.rank(i));
        m.paste(0, 0, -x.d(i - 1));
        m.paste(x.rank(i - 2), 0, -f.at(i - 1));
        m.paste(x.rank(i - 2), x.rank(i - 1), y.d(i));
        return m;
      });
  ChainMap from_target(y, c, [&](int i) {
    Matrix m(ring, c.rank(i), y.rank(i));
    m.paste(x.rank(i - 1), 0, Matrix::identity(ring, y.rank(i)));
    return m;
  });
  ChainComplex sx = shift(x, 1);
  ChainMap to_susp(c, sx, [&](int i) {
    Matrix m(ring, sx.rank(i), c.rank(i));
    m.paste(0, 0, Matrix::identity(ring, x.rank(i - 1)));
    return m;
  });
  return {std::move(c), std::move(from_target), std::move(to_susp)};
}

Cylinder cylinder(const ChainMap& f) {
  const ChainComplex& x = f.source();
  const ChainComplex& y = f.target();
  RingSpec ring = x.ring();
  auto rk = [&](int i) { return x.rank(i) + x.rank(i - 1) + y.rank(i); };
  ChainComplex cyl = assemble(ring, support({{&x, 0}, {&x, 1}, {&y, 0}}), rk, [&](int i) {
    // rows: X_{i-1} | X_{i-2} | Y_{i-1};  cols: X_i | X_{i-1} | Y_i
    Matrix m(ring, rk(i - 1), rk(i));
    std::size_t r1 = x.rank(i - 1), r2 = x.rank(i - 2);
    std::size_t c1 = x.rank(i), c2 = x.rank(i - 1);
    m.paste(0, 0, x.d(i));
    m.paste(0, c1, Matrix::identity(ring, r1));
    m.paste(r1, c1, -x.d(i - 1));
    m.paste(r1 + r2, c1, -f.at(i - 1));
    m.paste(r1 + r2, c1 + c2, y.d(i));
    return m;
  });
  ChainMap inclusion(x, cyl, [&](int i) {
    Matrix m(ring, cyl.rank(i), x.rank(i));
    m.paste(0, 0, Matrix::identity(ring, x.rank(i)));
    return m;
  });
  ChainMap projection(cyl, y, [&](int i) {
    Matrix m(ring, y.rank(i), cyl.rank(i));
    m.paste(0, 0, f.at(i));
    m.paste(0, x.rank(i) + x.rank(i - 1), Matrix::identity(ring, y.rank(i)));
    return m;
  });
  ChainMap section(y, cyl, [&](int i) {
    Matrix m(ring, cyl.rank(i), y.rank(i));
    m.paste(x.rank(i) + x.rank(i - 1), 0, Matrix::identity(ring, y.rank(i)));
    return m;
  });
  // h(x, x', y) = (0, x, 0): id - section∘projection = d h + h d.
  Homotopy homotopy(ChainMap::identity(cyl), compose(section, projection), [&](int i) {
    Matrix m(ring, cyl.rank(i + 1), cyl.rank(i));
    m.paste(x.rank(i + 1), 0, Matrix::identity(ring, x.rank(i)));
    return m;
  });
  Cone c = cone(f);
  ChainMap quotient(cyl, c.complex, [&](int i) {
    Matrix m(ring, c.complex.rank(i), cyl.rank(i));
    m.paste(0, x.rank(i), Matrix::identity(ring, x.rank(i - 1) + y.rank(i)));
    return m;
  });
  return {std::move(cyl), std::move(inclusion), std::move(projection), std::move(section), std::move(homotopy),
          std::move(quotient)};
}

// ---------------------------------------------------------------------------

SplitQuotient split_quotient(const ChainMap& i) {
  const ChainComplex& y = i.target();
  std::map<int, SplitCokernel> parts;
  for (int k = y.min_degree(); k <= y.max_degree(); ++k) {
    auto sc = split_cokernel(i.at(k));
    if (!sc) throw UsageError("split_quotient: not a split monomorphism in degree " + std::to_string(k));
    parts.emplace(k, std::move(*sc));
  }
  for (int k = i.source().min_degree(); k <= i.source().max_degree(); ++k)
    if (!y.in_range(k) && i.source().rank(k) > 0)
      throw UsageError("split_quotient: not a split monomorphism in degree " + std::to_string(k));
  Span s{y.min_degree(), y.max_degree()};
  ChainComplex q = assemble(
      y.ring(), s, [&](int k) { return parts.at(k).c.rows(); },
      [&](int k) { return parts.at(k - 1).c * y.d(k) * parts.at(k).s; });
  RingSpec ring = y.ring();
  ChainMap proj(y, q, [&](int k) { return parts.at(k).c; });
  auto section = [parts = std::move(parts), ring](int k) {
    auto it = parts.find(k);
    return it == parts.end() ? Matrix(ring, 0, 0) : it->second.s;
  };
  return {std::move(q), std::move(proj), section};
}

HomComplex::HomComplex(const ChainComplex& x, const ChainComplex& y) : x_(x), y_(y) {
  require_same_ring(x.ring(), y.ring(), "hom_complex");
  RingSpec ring = x.ring();
  bool empty = x.min_degree() > x.max_degree() || y.min_degree() > y.max_degree();
  if (empty) {
    complex_ = ChainComplex(ring, 0);
    return;
  }
  Span s{y.min_degree() - x.max_degree(), y.max_degree() - x.min_degree()};
  auto rank = [&](int n) {
    std::size_t total = 0;
    for (int i = x.min_degree(); i <= x.max_degree(); ++i) total += y.rank(i + n) * x.rank(i);
    return total;
  };
  complex_ = assemble(ring, s, rank, [&](int n) {
    // ∂ : Hom_n → Hom_{n-1}, (∂φ)_i = d_Y φ_i - (-1)^n φ_{i-1} d_X
    Matrix m(ring, rank(n - 1), rank(n));
    mpz_class sign = (n % 2 == 0) ? -1 : 1;  // coefficient of φ_{i-1} d_X
    std::size_t out_off = 0, in_off = 0;
    std::vector<std::size_t> in_offsets;
    for (int i = x.min_degree(); i <= x.max_degree(); ++i) {
      in_offsets.push_back(in_off);
      in_off += y.rank(i + n) * x.rank(i);
    }
    for (int i = x.min_degree(); i <= x.max_degree(); ++i) {
      std::size_t k = static_cast<std::size_t>(i - x.min_degree());
      std::size_t xi = x.rank(i), ya = y.rank(i + n - 1);
      // d_Y φ_i : entry (a, b) += dY(a, c) φ_i(c, b)
      const Matrix& dy = y.d(i + n);
      for (std::size_t a = 0; a < dy.rows(); ++a)
        for (std::size_t c = 0; c < dy.cols(); ++c) {
          if (dy(a, c) == 0) continue;
          for (std::size_t b = 0; b < xi; ++b)
            m.set(out_off + a * xi + b, in_offsets[k] + c * xi + b, m(out_off + a * xi + b, in_offsets[k] + c * xi + b) + dy(a, c));
        }
      // ∓ φ_{i-1} d_X : entry (a, b) += sign φ_{i-1}(a, c) dX(c, b)
      if (k > 0) {
        const Matrix& dx = x.d(i);
        std::size_t xprev = x.rank(i - 1);
        for (std::size_t c = 0; c < dx.rows(); ++c)
          for (std::size_t b = 0; b < dx.cols(); ++b) {
            if (dx(c, b) == 0) continue;
            mpz_class coeff = sign * dx(c, b);
            for (std::size_t a = 0; a < ya; ++a)
              m.set(out_off + a * xi + b, in_offsets[k - 1] + a * xprev + c,
                    m(out_off + a * xi + b, in_offsets[k - 1] + a * xprev + c) + coeff);
          }
      }
      out_off += ya * xi;
    }
    return m;
  });
}

std::size_t HomComplex::offset(int n, int i) const {
  std::size_t off = 0;
  for (int j = x_.min_degree(); j < i; ++j) off += y_.rank(j + n) * x_.rank(j);
  return off;
}

Matrix HomComplex::flatten(int n, const std::function<Matrix(int)>& component) const {
  Matrix v(x_.ring(), complex_.rank(n), 1);
  for (int i = x_.min_degree(); i <= x_.max_degree(); ++i) {
    std::size_t rows = y_.rank(i + n), cols = x_.rank(i);
    if (rows == 0 || cols == 0) continue;
    Matrix m = component(i);
    std::size_t off = offset(n, i);
    for (std::size_t a = 0; a < rows; ++a)
      for (std::size_t b = 0; b < cols; ++b) v.set(off + a * cols + b, 0, m(a, b));
  }
  return v;
}

Matrix HomComplex::flatten(const ChainMap& f) const {
  return flatten(0, [&](int i) { return f.at(i); });
}

Matrix HomComplex::component(int n, const Matrix& v, int i) const {
  std::size_t rows = y_.rank(i + n), cols = x_.rank(i);
  Matrix m(x_.ring(), rows, cols);
  if (rows == 0 || cols == 0) return m;
  std::size_t off = offset(n, i);
  for (std::size_t a = 0; a < rows; ++a)
    for (std::size_t b = 0; b < cols; ++b) m.set(a, b, v(off + a * cols + b, 0));
  return m;
}

ChainMap HomComplex::to_map(const Matrix& v) const {
  return ChainMap(x_, y_, [&](int i) { return component(0, v, i); });
}

}  // namespace chainweight
