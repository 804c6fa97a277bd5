#include <doctest.h>

#include "chainweight/errors.hpp"
#include "chainweight/generate.hpp"
#include "chainweight/homotopy.hpp"
#include "support/oracles.hpp"

using namespace chainweight;

namespace {

const RingSpec Z = RingSpec::integers();

ChainComplex point(int deg, std::size_t rank = 1) { return ChainComplex::concentrated(Z, deg, rank); }

// [Z --2--> Z] in degrees 1, 0.
ChainComplex z_mod_2() { return ChainComplex::two_term(1, Matrix::from_rows(Z, {{2}})); }

ChainMap times(const ChainComplex& x, long k) {
  return ChainMap(x, x, [&](int i) { return Matrix::identity(Z, x.rank(i)).scaled(k); });
}

GenParams small_params(std::uint64_t seed, RingSpec ring = Z) {
  GenParams p;
  p.seed = seed;
  p.ring = ring;
  p.min_degree = -2;
  p.max_degree = 2;
  p.max_rank = 3;
  p.max_blocks = 5;
  return p;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(ChainComplex(Z, 0)));
  CHECK(validate(z_mod_2()));
  ChainComplex bad(Z, 0, {1, 1, 1}, {Matrix::identity(Z, 1), Matrix::identity(Z, 1)});
  auto d = validate(bad);
  CHECK_FALSE(d);
  CHECK(d.degree == 2);
}

TEST_CASE("homology examples") {
  auto h = homology(point(0));
  CHECK(h.at(0).free_rank == 1);
  CHECK(h.groups.size() == 1);

  auto t = homology(z_mod_2());
  CHECK(t.at(1).is_zero());
  CHECK(t.at(0).free_rank == 0);
  CHECK(t.at(0).torsion == std::vector<mpz_class>{2});
  CHECK(t.to_string(0, 1) == "H_0: Z/2; H_1: 0");

  ChainComplex y = direct_sum(point(0, 2), z_mod_2());
  CHECK(is_acyclic(cone(ChainMap::identity(y)).complex));
}

TEST_CASE("shift") {
  ChainComplex x = z_mod_2();
  CHECK(shift(x, 0) == x);
  ChainComplex s = shift(point(0), 3);
  CHECK(s.min_degree() == 3);
  CHECK(s.rank(3) == 1);
  CHECK(shift(x, 1).d(2)(0, 0) == -2);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    ChainComplex g = gen_complex(small_params(seed)).complex;
    CHECK(shift(shift(g, 2), -5) == shift(g, -3));
    CHECK(homology(shift(g, 3)) == homology(g).shifted(3));
  }
}

TEST_CASE("direct sum") {
  ChainComplex x = z_mod_2();
  CHECK(direct_sum(x, ChainComplex(Z, 0)) == x);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto a = gen_complex(small_params(seed));
    auto b = gen_complex(small_params(seed + 100));
    ChainComplex s = direct_sum(a.complex, b.complex);
    CHECK(validate(s));
    for (int i = -3; i <= 3; ++i) CHECK(s.rank(i) == a.complex.rank(i) + b.complex.rank(i));
    CHECK(homology(s) == direct_sum(homology(a.complex), homology(b.complex)));
  }
}

TEST_CASE("cone") {
  ChainComplex y = z_mod_2();
  CHECK(cone(ChainMap::zero(ChainComplex(Z, 0), y)).complex == y);
  CHECK(is_acyclic(cone(ChainMap::identity(y)).complex));
  Cone c = cone(times(point(0), 2));
  // d(x, y) = (-dx, dy - fx): the cone is [Z --(-2)--> Z], isomorphic to the Z/2 resolution
  CHECK(c.complex.d(1) == Matrix::from_rows(Z, {{-2}}));
  CHECK(homology(c.complex) == homology(z_mod_2()));
  CHECK(check_chain_map(c.from_target));
  CHECK(check_chain_map(c.to_suspension));
}

TEST_CASE("cone Euler relation and canonical maps on random maps") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto x = gen_complex(small_params(seed)).complex;
    auto y = gen_complex(small_params(seed + 7)).complex;
    ChainMap f = gen_chain_map(seed, x, y);
    Cone c = cone(f);
    CHECK(validate(c.complex));
    CHECK(check_chain_map(c.from_target));
    CHECK(check_chain_map(c.to_suspension));
    auto chi = [](const ChainComplex& k) {
      long s = 0;
      for (int i = k.min_degree(); i <= k.max_degree(); ++i) s += (i % 2 == 0 ? 1 : -1) * static_cast<long>(k.rank(i));
      return s;
    };
    CHECK(chi(c.complex) == chi(y) - chi(x));
  }
}

TEST_CASE("cylinder") {
  ChainComplex x = z_mod_2();
  Cylinder cid = cylinder(ChainMap::identity(x));
  CHECK(compose(cid.projection, cid.inclusion) == ChainMap::identity(x));
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto a = gen_complex(small_params(seed)).complex;
    auto b = gen_complex(small_params(seed + 50)).complex;
    ChainMap f = gen_chain_map(seed, a, b);
    Cylinder cyl = cylinder(f);
    CHECK(validate(cyl.complex));
    CHECK(check_chain_map(cyl.inclusion));
    CHECK(check_chain_map(cyl.projection));
    CHECK(check_chain_map(cyl.section));
    CHECK(check_chain_map(cyl.quotient));
    CHECK(compose(cyl.projection, cyl.inclusion) == f);
    CHECK(compose(cyl.projection, cyl.section) == ChainMap::identity(b));
    CHECK(cyl.homotopy.verify());
    CHECK(homology(cyl.complex) == homology(b));
    CHECK(is_homotopy_equivalence(cyl.projection));
    // Cyl / X is the cone: the quotient kills exactly the X summand.
    Cone c = cone(f);
    CHECK(cyl.quotient.target() == c.complex);
    CHECK(compose(cyl.quotient, cyl.inclusion).is_zero());
    for (int i = cyl.complex.min_degree(); i <= cyl.complex.max_degree(); ++i)
      CHECK(cyl.complex.rank(i) == a.rank(i) + c.complex.rank(i));
  }
}

TEST_CASE("hom complex") {
  HomComplex h(point(0), point(0));
  CHECK(h.complex().rank(0) == 1);
  CHECK(h.complex().total_rank() == 1);
  CHECK(HomComplex(z_mod_2(), ChainComplex(Z, 0)).complex().is_zero());
  auto g = homology_at(HomComplex(point(0), z_mod_2()).complex(), 0);
  CHECK(g.free_rank == 0);
  CHECK(g.torsion == std::vector<mpz_class>{2});
}

TEST_CASE("hom complex cycles are chain maps and boundaries are nullhomotopic") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto x = gen_complex(small_params(seed)).complex;
    auto y = gen_complex(small_params(seed + 3)).complex;
    HomComplex hom(x, y);
    CHECK(validate(hom.complex()));
    ChainMap f = gen_chain_map(seed, x, y);
    CHECK(check_chain_map(f));
    CHECK(hom.flatten(f) == hom.flatten(0, [&](int i) { return f.at(i); }));
    CHECK(hom.to_map(hom.flatten(f)) == f);
    // a random h gives dh + hd, which must be nullhomotopic through h itself
    Rng rng(seed);
    Matrix v(Z, hom.complex().rank(1), 1);
    for (std::size_t r = 0; r < v.rows(); ++r) v.set(r, 0, rng.uniform(-2, 2));
    ChainMap b = hom.to_map(hom.complex().d(1) * v);
    CHECK(check_chain_map(b));
    Homotopy wit(b, ChainMap::zero(x, y), [&](int i) { return hom.component(1, v, i); });
    CHECK(wit.verify());
  }
}

TEST_CASE("pi0_hom against the Hom/Ext formula") {
  CHECK(pi0_hom(point(0), point(0)).free_rank == 1);
  CHECK(pi0_hom(point(0), point(1)).is_zero());
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto x = gen_complex(small_params(seed));
    auto y = gen_complex(small_params(seed + 1000));
    auto expected = oracle::homotopy_classes(x.expected, y.expected);
    CHECK(pi0_hom(x.complex, y.complex) == expected);
    if (seed <= 10) CHECK(pi0_hom_direct(x.complex, y.complex) == expected);
  }
  RingSpec f3 = RingSpec::prime_field(3);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto x = gen_complex(small_params(seed, f3));
    auto y = gen_complex(small_params(seed + 1000, f3));
    auto g = pi0_hom(x.complex, y.complex);
    CHECK(g.torsion.empty());
    CHECK(g.free_rank == oracle::homotopy_classes_dim(x.expected, y.expected));
  }
}

TEST_CASE("nullhomotopy") {
  ChainComplex x = z_mod_2();
  auto z = nullhomotopy(ChainMap::zero(x, x));
  REQUIRE(z);
  CHECK(z->verify());

  ChainComplex c = cone(ChainMap::identity(point(0))).complex;
  auto h = nullhomotopy(ChainMap::identity(c));
  REQUIRE(h);
  CHECK(h->verify());

  // the generator of H_0 Hom(Z[0], Z/2-resolution) = Z/2
  ChainMap g(point(0), x, [&](int) { return Matrix::from_rows(Z, {{1}}); });
  CHECK(check_chain_map(g));
  CHECK_FALSE(nullhomotopy(g).has_value());
  CHECK(nullhomotopy(g + g).has_value());
}

TEST_CASE("nullhomotopy exists iff the class vanishes") {
  int zero = 0, nonzero = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    auto x = gen_complex(small_params(seed)).complex;
    auto y = gen_complex(small_params(seed + 77)).complex;
    ChainMap f = gen_chain_map(seed, x, y);
    // class of f in H_0 Hom: zero iff f is a boundary of the hom complex
    HomComplex hom(x, y);
    bool boundary = oracle::solvable_over_q(hom.complex().d(1), hom.flatten(f)) &&
                    solve(hom.complex().d(1), hom.flatten(f)).has_value();
    auto h = nullhomotopy(f);
    CHECK(h.has_value() == boundary);
    if (h) {
      ++zero;
      CHECK(h->verify());
    } else {
      ++nonzero;
    }
  }
  CHECK(zero > 0);
  CHECK(nonzero > 0);
}

TEST_CASE("quasi-isomorphisms and homotopy inverses") {
  ChainComplex x = z_mod_2();
  CHECK(is_quasi_iso(ChainMap::identity(x)));
  CHECK_FALSE(is_quasi_iso(ChainMap::zero(ChainComplex(Z, 0), point(0))));
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto a = gen_complex(small_params(seed)).complex;
    auto b = gen_complex(small_params(seed + 5)).complex;
    Cylinder cyl = cylinder(gen_chain_map(seed, a, b));
    CHECK(is_homotopy_equivalence(cyl.projection, true));
    auto inv = homotopy_inverse(cyl.projection);
    REQUIRE(inv);
    CHECK(inv->verify());
  }
}

TEST_CASE("minimize") {
  ChainComplex c = cone(ChainMap::identity(point(0))).complex;
  CHECK(minimize(c).complex.is_zero());
  CHECK(minimize(z_mod_2()).complex == z_mod_2());
  RingSpec f2 = RingSpec::prime_field(2);
  CHECK(minimize(ChainComplex::two_term(1, Matrix::from_rows(f2, {{1}}))).complex.is_zero());

  for (RingSpec ring : {Z, RingSpec::prime_field(2), RingSpec::prime_field(5)}) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      auto g = gen_complex(small_params(seed, ring));
      MinimalModel m = minimize(g.complex);
      CHECK(validate(m.complex));
      CHECK(check_chain_map(m.forth));
      CHECK(check_chain_map(m.back));
      CHECK(compose(m.forth, m.back) == ChainMap::identity(m.complex));
      CHECK(m.homotopy.verify());
      CHECK(homology(m.complex) == g.expected);
      for (int i = m.complex.min_degree(); i <= m.complex.max_degree(); ++i) {
        for (auto& e : m.complex.d(i).entries()) CHECK_FALSE(ring.is_unit(e));
        if (ring.is_field()) CHECK(m.complex.rank(i) == oracle::betti(g.complex, i));
      }
    }
  }
}

TEST_CASE("homotopy classification") {
  ChainComplex x = z_mod_2();
  CHECK(homotopy_classify(x) == homotopy_classify(shift(x, 0)));
  // Z/2 resolved independently: [Z^2 --[[2,0],[1,1]]--> Z^2 ... ] has H_0 = Z/2
  ChainComplex other = ChainComplex::two_term(1, Matrix::from_rows(Z, {{1, 2}, {1, 0}}));
  CHECK(homology(other) == homology(x));
  auto eq = equivalence_between(x, other);
  REQUIRE(eq);
  CHECK(eq->verify());
  CHECK_FALSE(homotopy_classify(point(0)) == homotopy_classify(point(1)));
  CHECK_FALSE(equivalence_between(point(0), point(1)).has_value());

  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto g = gen_complex(small_params(seed));
    StandardForm sf = diagonalize(g.complex);
    CHECK(sf.profile == g.expected);
    CHECK(validate(sf.complex));
    CHECK(homology(sf.complex) == g.expected);
    CHECK(check_chain_map(sf.forth));
    CHECK(check_chain_map(sf.back));
    CHECK(compose(sf.forth, sf.back) == ChainMap::identity(sf.complex));
    CHECK(sf.homotopy.verify());
    // a re-conjugated copy has the same profile and an explicit equivalence
    Rng rng(seed);
    auto [y, iso] = conjugate(rng, direct_sum(g.complex, cone(ChainMap::identity(point(1))).complex), 2, 2);
    auto e = equivalence_between(g.complex, y);
    REQUIRE(e);
    CHECK(e->verify());
  }
}

TEST_CASE("split acyclic") {
  CHECK(split_acyclic(ChainComplex(Z, 0)).pieces.empty());
  ChainComplex c = cone(ChainMap::identity(point(0))).complex;
  auto s = split_acyclic(c);
  REQUIRE(s.pieces.size() == 1);
  CHECK(s.pieces[0] == std::pair<int, std::size_t>{1, 1});
  ChainComplex two = direct_sum(c, shift(c, 2));
  auto t = split_acyclic(two);
  CHECK(t.pieces.size() == 2);
  CHECK(t.elementary.total_rank() == two.total_rank());
  CHECK(t.verify(two));
  CHECK_THROWS_AS(split_acyclic(z_mod_2()), MathNegative);

  GenParams p = small_params(0);
  p.mix = {0, 1, 0};
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    p.seed = seed;
    auto g = gen_complex(p);
    auto sp = split_acyclic(g.complex);
    CHECK(sp.verify(g.complex));
    std::size_t cells = 0;
    for (auto& [deg, n] : sp.pieces) cells += 2 * n;
    CHECK(cells == g.complex.total_rank());
  }
}
