#include "chainweight/generate.hpp"

#include <algorithm>
#include <map>

#include "chainweight/constructions.hpp"
#include "chainweight/errors.hpp"
#include "chainweight/linalg.hpp"

namespace chainweight {

long Rng::uniform(long lo, long hi) {
  if (hi < lo) throw UsageError("Rng::uniform: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long>(engine_());
  // Rejection sampling keeps the draw unbiased.
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do v = engine_();
  while (v >= limit);
  return lo + static_cast<long>(v % span);
}

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 of the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

HomologyProfile block_homology(const Block& b, RingSpec ring) {
  HomologyProfile h{ring, {}};
  auto add_free = [&](int deg) { h.groups[deg].free_rank += 1; };
  switch (b.kind) {
    case BlockKind::Free:
      add_free(b.degree);
      break;
    case BlockKind::Elementary:
      break;
    case BlockKind::Torsion: {
      mpz_class t = ring.reduced(b.coefficient);
      if (t == 0) {
        add_free(b.degree);
        add_free(b.degree + 1);
      } else if (!ring.is_unit(t)) {
        h.groups[b.degree].torsion.push_back(abs(t));
      }
      break;
    }
  }
  return h;
}

ChainComplex assemble_blocks(const std::vector<Block>& blocks, RingSpec ring) {
  ChainComplex out(ring, 0);
  for (const auto& b : blocks) {
    ChainComplex piece = b.kind == BlockKind::Free
                             ? ChainComplex::concentrated(ring, b.degree, 1)
                             : ChainComplex::two_term(b.degree + 1, Matrix(ring, 1, 1, {b.coefficient}));
    out = direct_sum(out, piece);
  }
  return out;
}

std::pair<Matrix, Matrix> random_automorphism(Rng& rng, RingSpec ring, std::size_t n, long bound, std::size_t steps) {
  Matrix a = Matrix::identity(ring, n), inv = Matrix::identity(ring, n);
  if (n == 0) return {a, inv};
  for (std::size_t k = 0; k < n; ++k) {
    mpz_class u = 1;
    if (ring.is_field()) u = rng.uniform(1, static_cast<long>(ring.modulus()) - 1);
    else if (rng.coin()) u = -1;
    if (u == 1) continue;
    a.scale_row(k, u);
    inv.scale_col(k, ring.inverse(u));
  }
  if (n < 2 || bound < 1) return {a, inv};
  for (std::size_t s = 0; s < steps * n; ++s) {
    std::size_t dst = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 1));
    std::size_t src = static_cast<std::size_t>(rng.uniform(0, static_cast<long>(n) - 2));
    if (src >= dst) ++src;
    long c = rng.uniform(1, bound) * (rng.coin() ? 1 : -1);
    a.add_row_multiple(dst, src, c);        // E a with E = I + c e_dst e_srcᵀ
    inv.add_col_multiple(src, dst, -c);     // inv E⁻¹
  }
  return {a, inv};
}

std::pair<ChainComplex, ChainMap> conjugate(Rng& rng, const ChainComplex& x, long bound, std::size_t steps) {
  RingSpec ring = x.ring();
  int lo = x.min_degree(), hi = x.max_degree();
  std::vector<Matrix> phi, phi_inv;
  for (int i = lo; i <= hi; ++i) {
    auto [a, ai] = random_automorphism(rng, ring, x.rank(i), bound, steps);
    phi.push_back(std::move(a));
    phi_inv.push_back(std::move(ai));
  }
  auto k = [lo](int i) { return static_cast<std::size_t>(i - lo); };
  std::vector<Matrix> diffs;
  for (int i = lo + 1; i <= hi; ++i) diffs.push_back(phi[k(i - 1)] * x.d(i) * phi_inv[k(i)]);
  ChainComplex y = lo > hi ? ChainComplex(ring, lo) : ChainComplex(ring, lo, x.ranks(), std::move(diffs));
  ChainMap iso(x, y, [&](int i) { return phi[k(i)]; });
  return {std::move(y), std::move(iso)};
}

std::vector<Block> random_blocks(Rng& rng, const GenParams& p) {
  if (p.min_degree > p.max_degree) throw UsageError("empty degree window");
  std::vector<Block> blocks;
  std::map<int, std::size_t> used;
  long count = rng.uniform(0, static_cast<long>(p.max_blocks));
  unsigned total = p.mix.free + p.mix.elementary + p.mix.torsion;
  if (total == 0) return blocks;
  for (long b = 0; b < count; ++b) {
    long pick = rng.uniform(0, static_cast<long>(total) - 1);
    BlockKind kind = pick < static_cast<long>(p.mix.free)                          ? BlockKind::Free
                     : pick < static_cast<long>(p.mix.free + p.mix.elementary) ? BlockKind::Elementary
                                                                                   : BlockKind::Torsion;
    if (kind != BlockKind::Free && p.min_degree == p.max_degree) kind = BlockKind::Free;
    if (kind == BlockKind::Torsion && p.max_entry < 2) kind = BlockKind::Elementary;
    int top = kind == BlockKind::Free ? p.max_degree : p.max_degree - 1;
    int deg = static_cast<int>(rng.uniform(p.min_degree, top));
    mpz_class coeff = 0;
    if (kind == BlockKind::Elementary) {
      coeff = p.ring.is_field() ? mpz_class(rng.uniform(1, static_cast<long>(p.ring.modulus()) - 1))
                                : mpz_class(rng.coin() ? 1 : -1);
    } else if (kind == BlockKind::Torsion) {
      coeff = rng.uniform(2, p.max_entry);
    }
    bool two = kind != BlockKind::Free;
    if (used[deg] + 1 > p.max_rank || (two && used[deg + 1] + 1 > p.max_rank)) continue;
    ++used[deg];
    if (two) ++used[deg + 1];
    blocks.push_back({kind, deg, coeff});
  }
  return blocks;
}

GeneratedComplex gen_complex(Rng& rng, const GenParams& p) {
  auto blocks = random_blocks(rng, p);
  HomologyProfile expected{p.ring, {}};
  for (const auto& b : blocks) expected = direct_sum(expected, block_homology(b, p.ring));
  // drop zero groups left behind by the additions
  for (auto it = expected.groups.begin(); it != expected.groups.end();)
    it = it->second.is_zero() ? expected.groups.erase(it) : std::next(it);
  ChainComplex sum = assemble_blocks(blocks, p.ring);
  auto [x, iso] = conjugate(rng, sum, p.max_entry, p.conjugation_steps);
  return {std::move(x), std::move(expected), std::move(blocks)};
}

GeneratedComplex gen_complex(const GenParams& p) {
  Rng rng(p.seed);
  return gen_complex(rng, p);
}

ChainMap gen_chain_map(Rng& rng, const ChainComplex& x, const ChainComplex& y, long bound) {
  HomComplex hom(x, y);
  Matrix cycles = kernel_basis(hom.complex().d(0));
  Matrix v(x.ring(), cycles.rows(), 1);
  for (std::size_t c = 0; c < cycles.cols(); ++c) {
    long coeff = rng.uniform(-bound, bound);
    if (coeff == 0) continue;
    for (std::size_t r = 0; r < cycles.rows(); ++r) v.set(r, 0, v(r, 0) + coeff * cycles(r, c));
  }
  ChainMap f = hom.to_map(v);
  if (auto d = check_chain_map(f); !d) throw InvariantViolation("generated map is not a chain map: " + d.message);
  return f;
}

ChainMap gen_chain_map(std::uint64_t seed, const ChainComplex& x, const ChainComplex& y, long bound) {
  Rng rng(seed);
  return gen_chain_map(rng, x, y, bound);
}

}  // namespace chainweight

namespace chainweight {

namespace {

Matrix prefix_block(RingSpec ring, std::size_t rows, std::size_t cols) {
  Matrix m(ring, rows, cols);
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) m.set(i, i, 1);
  return m;
}

// Number of cells of level <= k in each degree of g.complex.
std::size_t prefix_count(const GeneratedFiltration& g, int deg, int k) {
  std::size_t n = 0;
  for (std::size_t c = 0; c < g.complex.rank(deg); ++c)
    if (g.level_of(deg, c) <= k) ++n;
  return n;
}

const ChainMap& stage_iso(const GeneratedFiltration& g, int k) {
  const CellFiltration& f = g.filtration;
  k = std::clamp(k, f.lo - 1, f.hi);
  return g.stage_isos[static_cast<std::size_t>(k - f.lo + 1)];
}

Matrix inverse_or_throw(const Matrix& m) {
  auto inv = inverse(m);
  if (!inv) throw InvariantViolation("stage change of basis is not invertible");
  return *inv;
}

}  // namespace

int GeneratedFiltration::level_of(int deg, std::size_t cell) const {
  return levels[static_cast<std::size_t>(deg - complex.min_degree())][cell];
}

GeneratedFiltration gen_filtration(Rng& rng, const GenParams& p) {
  RingSpec ring = p.ring;
  GeneratedFiltration g;
  auto blocks = random_blocks(rng, p);
  g.expected = HomologyProfile{ring, {}};
  for (const auto& b : blocks) g.expected = direct_sum(g.expected, block_homology(b, ring));
  for (auto it = g.expected.groups.begin(); it != g.expected.groups.end();)
    it = it->second.is_zero() ? g.expected.groups.erase(it) : std::next(it);

  struct Cell {
    int level;
    std::size_t id;
  };
  struct Edge {
    std::size_t top, bottom;
    mpz_class coeff;
  };
  std::map<int, std::vector<Cell>> cells;
  std::vector<Edge> edges;
  std::size_t next = 0;
  auto add = [&](int deg, int level) {
    cells[deg].push_back({level, next});
    return next++;
  };
  for (const auto& b : blocks) {
    if (b.kind == BlockKind::Free) {
      add(b.degree, b.degree);
      continue;
    }
    int top_level = b.degree + 1, bottom_level = b.degree;
    if (b.kind == BlockKind::Elementary && rng.coin())
      top_level = bottom_level = static_cast<int>(rng.uniform(p.min_degree, p.max_degree));
    std::size_t top = add(b.degree + 1, top_level);
    std::size_t bottom = add(b.degree, bottom_level);
    edges.push_back({top, bottom, b.coefficient});
  }

  int lo = cells.empty() ? 0 : cells.begin()->first;
  int hi = cells.empty() ? -1 : cells.rbegin()->first;
  std::map<std::size_t, std::pair<int, std::size_t>> where;  // id → (degree, position)
  std::vector<std::size_t> ranks;
  for (int deg = lo; deg <= hi; ++deg) {
    auto& cs = cells[deg];
    std::stable_sort(cs.begin(), cs.end(), [](const Cell& a, const Cell& b) { return a.level < b.level; });
    std::vector<int> lv;
    for (std::size_t i = 0; i < cs.size(); ++i) {
      where[cs[i].id] = {deg, i};
      lv.push_back(cs[i].level);
    }
    g.levels.push_back(std::move(lv));
    ranks.push_back(cs.size());
  }
  std::vector<Matrix> diffs;
  for (int deg = lo + 1; deg <= hi; ++deg) diffs.emplace_back(ring, cells[deg - 1].size(), cells[deg].size());
  for (const auto& e : edges) {
    auto [deg, col] = where.at(e.top);
    auto row = where.at(e.bottom).second;
    diffs[static_cast<std::size_t>(deg - lo - 1)].set(row, col, e.coeff);
  }
  g.complex = lo > hi ? ChainComplex(ring, 0) : ChainComplex(ring, lo, ranks, std::move(diffs));

  CellFiltration& f = g.filtration;
  f.lo = p.min_degree;
  f.hi = p.max_degree;
  const ChainComplex& x = g.complex;
  for (int k = f.lo - 1; k <= f.hi; ++k) {
    std::vector<std::size_t> counts;
    std::vector<Matrix> pd;
    for (int deg = x.min_degree(); deg <= x.max_degree(); ++deg) {
      counts.push_back(prefix_count(g, deg, k));
      if (deg > x.min_degree()) pd.push_back(x.d(deg).block(0, 0, counts[counts.size() - 2], counts.back()));
    }
    ChainComplex prefix = x.min_degree() > x.max_degree() ? ChainComplex(ring, 0)
                                                          : ChainComplex(ring, x.min_degree(), counts, std::move(pd));
    auto [stage, iso] = conjugate(rng, prefix, p.max_entry, p.conjugation_steps);
    f.stages.push_back(std::move(stage));
    g.stage_isos.push_back(std::move(iso));
  }
  for (int k = f.lo; k <= f.hi; ++k) {
    const ChainMap& from = stage_iso(g, k - 1);
    const ChainMap& to = stage_iso(g, k);
    f.inclusions.emplace_back(f.stage(k - 1), f.stage(k), [&](int deg) {
      return to.at(deg) * prefix_block(ring, to.source().rank(deg), from.source().rank(deg)) *
             inverse_or_throw(from.at(deg));
    });
  }
  return g;
}

FiltrationMap gen_filtration_map(Rng& rng, const GeneratedFiltration& a, const GeneratedFiltration& b, long bound) {
  const ChainComplex& x = a.complex;
  const ChainComplex& y = b.complex;
  RingSpec ring = x.ring();
  HomComplex hom(x, y);
  Matrix mask = hom.flatten(0, [&](int deg) {
    Matrix m(ring, y.rank(deg), x.rank(deg));
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (b.level_of(deg, r) <= a.level_of(deg, c)) m.set(r, c, 1);
    return m;
  });
  std::vector<std::size_t> allowed, rows;
  for (std::size_t i = 0; i < mask.rows(); ++i)
    if (mask(i, 0) != 0) allowed.push_back(i);
  const Matrix& d0 = hom.complex().d(0);
  for (std::size_t r = 0; r < d0.rows(); ++r) rows.push_back(r);
  Matrix cycles = kernel_basis(d0.select(rows, allowed));
  Matrix v(ring, mask.rows(), 1);
  for (std::size_t c = 0; c < cycles.cols(); ++c) {
    long coeff = rng.uniform(-bound, bound);
    if (coeff == 0) continue;
    for (std::size_t r = 0; r < cycles.rows(); ++r) v.set(allowed[r], 0, v(allowed[r], 0) + coeff * cycles(r, c));
  }
  ChainMap big = hom.to_map(v);
  return make_filtration_map(a.filtration, b.filtration, [&](int k, int deg) {
    const ChainMap& src = stage_iso(a, k);
    const ChainMap& dst = stage_iso(b, k);
    Matrix restricted = big.at(deg).block(0, 0, dst.source().rank(deg), src.source().rank(deg));
    return dst.at(deg) * restricted * inverse_or_throw(src.at(deg));
  });
}

}  // namespace chainweight
