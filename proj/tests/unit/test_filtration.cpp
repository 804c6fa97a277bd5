#include <doctest.h>

#include "chainweight/errors.hpp"
#include "chainweight/filtration.hpp"
#include "chainweight/generate.hpp"
#include "support/oracles.hpp"

using namespace chainweight;

namespace {

const RingSpec Z = RingSpec::integers();

ChainComplex point(int deg, std::size_t rank = 1) { return ChainComplex::concentrated(Z, deg, rank); }
ChainComplex z_mod_2() { return ChainComplex::two_term(1, Matrix::from_rows(Z, {{2}})); }
ChainComplex elementary() { return cone(ChainMap::identity(point(0))).complex; }

GenParams params(std::uint64_t seed, RingSpec ring = Z) {
  GenParams p;
  p.seed = seed;
  p.ring = ring;
  p.min_degree = -2;
  p.max_degree = 2;
  p.max_rank = 3;
  p.max_blocks = 5;
  return p;
}

ChainMap scalar(const ChainComplex& x, const ChainComplex& y, long c) {
  return ChainMap(x, y, [&](int) { return Matrix::from_rows(Z, {{c}}); });
}

}  // namespace

TEST_CASE("skeletal filtration examples") {
  auto f = skeletal_filtration(point(0));
  CHECK(f.lo == 0);
  CHECK(f.hi == 0);
  CHECK(f.stage(-1).is_zero());
  CHECK(f.colimit() == point(0));
  CHECK(verify_cell_filtration(f));

  auto g = skeletal_filtration(z_mod_2());
  CHECK(g.stage(-1).is_zero());
  CHECK(g.stage(0) == point(0));
  CHECK(g.stage(1) == z_mod_2());
  CHECK(level_quotient(g, 0).complex == point(0));
  CHECK(level_quotient(g, 1).complex.trimmed() == point(1));
  CHECK(verify_cell_filtration(g));

  auto z = skeletal_filtration(ChainComplex(Z, 0));
  CHECK(z.stages.size() == 1);
  CHECK(z.colimit().is_zero());
  CHECK(z.stage(7).is_zero());
  CHECK(verify_cell_filtration(z));
}

TEST_CASE("skeletal filtration reproduces the complex") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto g = gen_complex(params(seed));
    auto f = skeletal_filtration(g.complex);
    CHECK(f.colimit() == g.complex);
    CHECK(verify_cell_filtration(f));
    for (int k = f.lo; k <= f.hi; ++k) CHECK(level_quotient(f, k).complex.trimmed() == point(k, g.complex.rank(k)).trimmed());
  }
}

TEST_CASE("truncation and cotruncation") {
  auto f = skeletal_filtration(z_mod_2());
  CHECK(truncate_filtration(f, f.hi) == f);
  auto t = truncate_filtration(f, f.lo - 1);
  CHECK(t.stages.size() == 1);
  CHECK(t.colimit().is_zero());
  CHECK(truncate_filtration(f, 0).colimit() == point(0));
  CHECK(cotruncate_filtration(f, 0).limit() == point(0));
  CHECK(verify_cell_filtration(cotruncate_filtration(f, 0), true));
  CHECK_FALSE(verify_cell_filtration(cotruncate_filtration(f, 0)));

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    Rng rng(seed);
    auto g = gen_filtration(rng, params(seed));
    for (int m = -3; m <= 3; ++m)
      for (int n = m; n <= 3; ++n) {
        auto a = truncate_filtration(cotruncate_filtration(g.filtration, m), n);
        auto b = cotruncate_filtration(truncate_filtration(g.filtration, n), m);
        CHECK(a == b);
      }
  }
}

TEST_CASE("verify_cell_filtration rejects a torsion quotient") {
  // 0 ⊂ Z[0] ⊂ [Z --2--> Z] relabelled so that both cells sit at level 0
  CellFiltration f;
  f.lo = 0;
  f.hi = 1;
  f.stages = {ChainComplex(Z, 0), z_mod_2(), z_mod_2()};
  f.inclusions = {ChainMap::zero(f.stages[0], f.stages[1]), ChainMap::identity(z_mod_2())};
  auto d = verify_cell_filtration(f);
  CHECK_FALSE(d);
  CHECK(d.degree == 0);
}

TEST_CASE("verify_cell_filtration accepts a constant acyclic filtration") {
  CellFiltration f;
  f.lo = 0;
  f.hi = -1;
  f.stages = {elementary()};
  CHECK(verify_cell_filtration(f));
  CHECK(is_v_acyclic(f).acyclic);
}

TEST_CASE("generated filtrations verify") {
  for (RingSpec ring : {Z, RingSpec::prime_field(3)}) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      Rng rng(seed);
      auto g = gen_filtration(rng, params(seed, ring));
      CHECK(verify_cell_filtration(g.filtration));
      CHECK(homology(g.filtration.colimit()) == g.expected);
      // Euler bookkeeping over the cells
      long chi = 0;
      for (int k = g.filtration.lo; k <= g.filtration.hi; ++k) {
        auto s = strictify_heart(shift(level_quotient(g.filtration, k).complex, -k), 0);
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(s.free.rank(0));
      }
      CHECK(chi == oracle::euler(g.filtration.colimit()));
    }
  }
}

TEST_CASE("v-acyclic filtrations") {
  auto f = skeletal_filtration(elementary());
  auto v = is_v_acyclic(f);
  CHECK(v.acyclic);
  CHECK(f.stage(0) == point(0));
  CHECK(weight_bounds(f.stage(0)) == WeightBounds{false, 0, 0});
  CHECK_FALSE(is_v_acyclic(skeletal_filtration(point(0))).acyclic);
  CHECK(is_v_acyclic(skeletal_filtration(ChainComplex(Z, 0))).acyclic);

  GenParams p = params(1);
  p.mix = {0, 1, 0};
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    Rng rng(seed);
    auto g = gen_filtration(rng, p);
    auto r = is_v_acyclic(g.filtration);
    CHECK(r.acyclic);
    for (std::size_t t = 0; t < r.stage_bounds.size(); ++t) {
      int k = g.filtration.lo - 1 + static_cast<int>(t);
      CHECK((r.stage_bounds[t].zero || (r.stage_bounds[t].lo == k && r.stage_bounds[t].hi == k)));
    }
  }
}

TEST_CASE("filtration maps: identity and generated") {
  auto f = skeletal_filtration(z_mod_2());
  auto id = make_filtration_map(f, f, [&](int k, int deg) { return Matrix::identity(Z, f.stage(k).rank(deg)); });
  CHECK(id.strict);
  CHECK(is_ingression(id));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed);
    auto a = gen_filtration(rng, params(seed));
    auto b = gen_filtration(rng, params(seed + 100));
    auto m = gen_filtration_map(rng, a, b);
    CHECK(m.strict);
    for (int k = m.lo; k <= m.hi(); ++k) CHECK(check_chain_map(m.at(k)));
    for (const auto& h : m.squares) CHECK(h.verify());
  }
}

TEST_CASE("square commuting only up to homotopy") {
  // B_0 = Z[0], B_1 = Z[0] ⊕ [Z =1=> Z]; f_1 hits the acyclic cell as well.
  ChainComplex e = elementary();
  ChainComplex b1 = direct_sum(point(0), e);
  CellFiltration a = skeletal_filtration(point(0));
  CellFiltration b;
  b.lo = 0;
  b.hi = 1;
  b.stages = {ChainComplex(Z, 0), point(0), b1};
  b.inclusions = {ChainMap::zero(b.stages[0], point(0)), summand_inclusion(point(0), e, false)};
  REQUIRE(verify_cell_filtration(b));
  auto m = make_filtration_map(a, b, [&](int k, int deg) {
    Matrix out(Z, b.stage(k).rank(deg), a.stage(k).rank(deg));
    if (k >= 0 && deg == 0) out.set(0, 0, 1);
    if (k >= 1 && deg == 0) out.set(1, 0, 1);
    return out;
  });
  CHECK_FALSE(m.strict);
  for (const auto& h : m.squares) CHECK(h.verify());
  CHECK(is_ingression(m) == true);
  CHECK_THROWS_AS(mapping_cylinder_filtration(m), UsageError);
}

TEST_CASE("mapping cylinder wedge formula") {
  auto f = skeletal_filtration(z_mod_2());
  auto id = make_filtration_map(f, f, [&](int k, int deg) { return Matrix::identity(Z, f.stage(k).rank(deg)); });
  auto m = mapping_cylinder_filtration(id);
  CHECK(verify_cell_filtration(m.filtration));
  CHECK(check_wedge_formula(id, m));
  CHECK(m.colimit_equivalence.verify());
  CHECK(is_ingression(m.ingression));

  // from the zero filtration: Mf ≅ B
  CellFiltration zero = skeletal_filtration(ChainComplex(Z, 0));
  auto from0 = make_filtration_map(zero, f, [&](int k, int deg) { return Matrix(Z, f.stage(k).rank(deg), 0); });
  auto m0 = mapping_cylinder_filtration(from0);
  CHECK(homotopy_classify(m0.filtration.colimit()) == homology(z_mod_2()));
  for (int k = m0.filtration.lo - 1; k <= m0.filtration.hi; ++k)
    CHECK(m0.filtration.stage(k).total_rank() == f.stage(k).total_rank());
  CHECK(check_wedge_formula(from0, m0));

  // into the zero filtration: the colimit is acyclic
  auto to0 = make_filtration_map(f, zero, [&](int k, int deg) { return Matrix(Z, 0, f.stage(k).rank(deg)); });
  auto m1 = mapping_cylinder_filtration(to0);
  CHECK(is_acyclic(m1.filtration.colimit()));
  CHECK(check_wedge_formula(to0, m1));
  CHECK(is_v_acyclic(m1.filtration).acyclic);

  for (RingSpec ring : {Z, RingSpec::prime_field(2)}) {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
      Rng rng(seed);
      auto a = gen_filtration(rng, params(seed, ring));
      auto b = gen_filtration(rng, params(seed + 7, ring));
      auto map = gen_filtration_map(rng, a, b);
      auto cyl = mapping_cylinder_filtration(map);
      CHECK(verify_cell_filtration(cyl.filtration));
      CHECK(check_wedge_formula(map, cyl));
      CHECK(cyl.colimit_equivalence.verify());
      CHECK(is_ingression(cyl.ingression));
    }
  }
}

TEST_CASE("connectivity examples") {
  CHECK(connectivity(ChainMap::identity(z_mod_2())) == kInfiniteConnectivity);
  CHECK(connectivity_string(kInfiniteConnectivity) == "infinity");
  for (int k : {-2, 0, 3}) CHECK(connectivity(ChainMap::zero(ChainComplex(Z, 0), point(k))) == k - 1);
  CHECK(connectivity(scalar(point(0), point(0), 2)) == -1);
}

TEST_CASE("composite connectivity") {
  auto v = compose_connectivity_check(ChainMap::identity(point(0)), ChainMap::identity(point(0)));
  CHECK(v.composite == kInfiniteConnectivity);
  ChainComplex y = direct_sum(point(3), point(4));
  ChainMap a = ChainMap::zero(ChainComplex(Z, 0), point(3));
  ChainMap b(point(3), y, [&](int deg) { return deg == 3 ? Matrix::from_rows(Z, {{1}}) : Matrix(Z, y.rank(deg), 0); });
  auto w = compose_connectivity_check(a, b);
  CHECK(w.composite >= 2);
  CHECK(w.composite == 2);
  auto u = compose_connectivity_check(scalar(point(0), point(0), 2), ChainMap::identity(point(0)));
  CHECK(u.composite == -1);
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto x = gen_complex(params(seed)).complex;
    auto y1 = gen_complex(params(seed + 1000)).complex;
    auto z = gen_complex(params(seed + 2000)).complex;
    Rng rng(seed);
    auto f = gen_chain_map(rng, x, y1);
    auto g = gen_chain_map(rng, y1, z);
    CHECK_NOTHROW(compose_connectivity_check(f, g));
  }
}

TEST_CASE("factorization examples") {
  auto e = factor_connected_map(ChainMap::identity(z_mod_2()), 0);
  CHECK(e.inclusions.empty());
  CHECK(e.stages.front() == z_mod_2());
  CHECK(e.verify(ChainMap::identity(z_mod_2())));

  ChainMap f = ChainMap::zero(ChainComplex(Z, 0), point(2));
  auto g = factor_connected_map(f, 1);
  CHECK(g.inclusions.size() == 1);
  CHECK(g.stages.back().total_rank() == 1);
  CHECK(g.stages.back().rank(2) == 1);
  CHECK(g.verify(f));

  ChainComplex y = direct_sum(point(0), point(3));
  ChainMap inc(point(0), y, [&](int deg) { return deg == 0 ? Matrix::from_rows(Z, {{1}}) : Matrix(Z, y.rank(deg), 0); });
  auto h = factor_connected_map(inc, 2);
  CHECK(h.inclusions.size() == 1);
  CHECK(homology(split_quotient(h.inclusions[0]).complex) == homology(point(3)));
  CHECK(h.verify(inc));
  CHECK_THROWS_AS(factor_connected_map(inc, 3), MathNegative);
  CHECK_THROWS_AS(factor_connected_map(scalar(point(0), point(0), 2), 0), MathNegative);
}

TEST_CASE("factorization of random connected maps") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    Rng rng(seed);
    auto x = gen_complex(rng, params(seed)).complex;
    int n = static_cast<int>(rng.uniform(-2, 1));
    GenParams cp = params(seed + 77);
    cp.min_degree = n;
    cp.max_degree = 3;
    auto c = gen_complex(rng, cp).complex;  // w >= n
    ChainMap attach = gen_chain_map(rng, c, x);
    Cone cn = cone(attach);  // cells of c attached in degrees >= n+1
    auto [y, iso] = conjugate(rng, cn.complex, 3, 3);
    ChainMap f = compose(iso, cn.from_target);
    REQUIRE(connectivity(f) >= n);
    auto fac = factor_connected_map(f, n);
    CHECK(fac.verify(f));
    CHECK(is_homotopy_equivalence(fac.equivalence.forth));
    CHECK(compose(fac.equivalence.forth, fac.composite()) == f);
  }
}
