#include <doctest.h>

#include "chainweight/errors.hpp"
#include "chainweight/generate.hpp"
#include "chainweight/weights.hpp"
#include "support/oracles.hpp"

using namespace chainweight;

namespace {

const RingSpec Z = RingSpec::integers();

ChainComplex point(int deg, std::size_t rank = 1, RingSpec ring = Z) {
  return ChainComplex::concentrated(ring, deg, rank);
}
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

// Membership straight from the expected profile of a generated complex.
bool expect_geq(const HomologyProfile& h, int n) {
  for (auto& [i, g] : h.groups)
    if (i < n) return false;
  return true;
}
bool expect_leq(const HomologyProfile& h, int n) {
  for (auto& [i, g] : h.groups)
    if (i > n || (i == n && !g.torsion.empty())) return false;
  return true;
}

}  // namespace

TEST_CASE("membership examples") {
  CHECK(in_w_geq(point(0), 0));
  CHECK_FALSE(in_w_geq(point(0), 1));
  CHECK(in_w_geq(z_mod_2(), 0));
  for (int n = -3; n <= 3; ++n) {
    CHECK(in_w_geq(ChainComplex(Z, 0), n));
    CHECK(in_w_leq(ChainComplex(Z, 0), n));
  }
  CHECK(in_w_leq(point(0), 0));
  CHECK_FALSE(in_w_leq(z_mod_2(), 0));
  CHECK(in_w_leq(z_mod_2(), 1));
  // over F_2 the same differential vanishes: H_0 = H_1 = F_2
  RingSpec f2 = RingSpec::prime_field(2);
  ChainComplex x2 = ChainComplex::two_term(1, Matrix::from_rows(f2, {{2}}));
  CHECK_FALSE(in_w_leq(x2, 0));
  CHECK(in_w_leq(x2, 1));
  RingSpec f3 = RingSpec::prime_field(3);
  ChainComplex x3 = ChainComplex::two_term(1, Matrix::from_rows(f3, {{2}}));
  CHECK(in_w_leq(x3, 0));  // acyclic over F_3
}

TEST_CASE("heart and weight bounds") {
  CHECK(in_heart(point(0, 3)));
  CHECK(weight_bounds(point(0, 3)) == WeightBounds{false, 0, 0});
  CHECK(weight_bounds(z_mod_2()) == WeightBounds{false, 0, 1});
  CHECK(weight_bounds(elementary()).zero);
  CHECK(weight_bounds(z_mod_2()).to_string() == "[0, 1]");
}

TEST_CASE("weight bounds are minimal") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto g = gen_complex(params(seed));
    WeightBounds b = weight_bounds(g.complex);
    CHECK(b.zero == g.expected.is_acyclic());
    if (b.zero) continue;
    CHECK(in_w_geq(g.complex, b.lo));
    CHECK_FALSE(in_w_geq(g.complex, b.lo + 1));
    CHECK(in_w_leq(g.complex, b.hi));
    CHECK_FALSE(in_w_leq(g.complex, b.hi - 1));
    CHECK(b.lo <= b.hi);
  }
}

TEST_CASE("axioms: inclusion, shift compatibility") {
  for (RingSpec ring : {Z, RingSpec::prime_field(2)}) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      auto g = gen_complex(params(seed, ring));
      for (int n = -4; n <= 4; ++n) {
        CHECK(in_w_geq(g.complex, n) == expect_geq(g.expected, n));
        if (!ring.is_field()) CHECK(in_w_leq(g.complex, n) == expect_leq(g.expected, n));
        if (in_w_geq(g.complex, n + 1)) CHECK(in_w_geq(g.complex, n));
        if (in_w_leq(g.complex, n - 1)) CHECK(in_w_leq(g.complex, n));
        for (int k : {-3, 1, 2}) {
          CHECK(in_w_leq(g.complex, n) == in_w_leq(shift(g.complex, k), n + k));
          CHECK(in_w_geq(g.complex, n) == in_w_geq(shift(g.complex, k), n + k));
        }
      }
    }
  }
}

TEST_CASE("weight decomposition examples") {
  auto d0 = weight_decompose(point(0, 2), 0);
  CHECK(d0.a == point(0, 2));
  CHECK(d0.b.is_zero());
  auto d1 = weight_decompose(z_mod_2(), 0);
  CHECK(d1.a == point(0));
  CHECK(d1.b == point(1));
  auto d2 = weight_decompose(z_mod_2(), -5);
  CHECK(d2.a.is_zero());
  CHECK(d2.b == z_mod_2());
  CHECK(d1.verify());
}

TEST_CASE("weight decompositions of random complexes verify") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto g = gen_complex(params(seed));
    for (int n = -3; n <= 2; ++n) {
      auto d = weight_decompose(g.complex, n);
      CHECK(d.verify());
    }
  }
}

TEST_CASE("weight decomposition rejects a broken certificate") {
  auto d = weight_decompose(z_mod_2(), 0);
  d.p_map = ChainMap::zero(d.x, d.b);
  CHECK_FALSE(d.verify());
}

TEST_CASE("orthogonality") {
  CHECK(check_orthogonality(point(0), point(1), 0).trivial);
  CHECK(check_orthogonality(shift(z_mod_2(), -1), point(1), 0).trivial);
  CHECK_THROWS_AS(check_orthogonality(point(0), point(0), 0), UsageError);
  int tested = 0;
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto gx = gen_complex(params(seed));
    auto gy = gen_complex(params(seed + 500));
    auto bx = weight_bounds(gx.complex), by = weight_bounds(gy.complex);
    ChainComplex x = bx.zero ? gx.complex : shift(gx.complex, -bx.hi);  // w <= 0
    ChainComplex y = by.zero ? gy.complex : shift(gy.complex, 1 - by.lo);  // w >= 1
    auto v = check_orthogonality(x, y, 0);
    CHECK(v.trivial);
    ++tested;
  }
  CHECK(tested == 60);
}

TEST_CASE("compare decompositions") {
  auto d = weight_decompose(z_mod_2(), 0);
  auto same = compare_decompositions(d, d);
  CHECK(same.a_witness.verify());
  CHECK(same.b_witness.verify());
  CHECK(nullhomotopy(same.a - ChainMap::identity(d.a)).has_value());
  CHECK_FALSE(same.unique);  // π₀Hom(Z[0], Σ⁻¹Z[1]) = Z

  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto g = gen_complex(params(seed));
    for (int n = -2; n <= 1; ++n)
      for (int m = n; m <= 2; ++m) {
        auto dn = weight_decompose(g.complex, n);
        auto dm = weight_decompose(g.complex, m);
        auto c = compare_decompositions(dn, dm);
        CHECK(c.a_witness.verify());
        CHECK(c.b_witness.verify());
        if (m >= n + 1) CHECK(c.unique);
        // the direct construction: σ≤n ↪ σ≤m and the projection σ≥n+1 ↠ σ≥m+1
        ChainMap inc(dn.a, dm.a, [&](int k) { return Matrix::identity(Z, g.complex.rank(k)); });
        ChainMap proj(dn.b, dm.b, [&](int k) { return Matrix::identity(Z, g.complex.rank(k)); });
        if (c.unique) {
          CHECK(nullhomotopy(c.a - inc).has_value());
          CHECK(nullhomotopy(c.b - proj).has_value());
        }
      }
  }
}

TEST_CASE("compare decompositions: w>=n object at n-1") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto g = gen_complex(params(seed));
    auto b = weight_bounds(g.complex);
    if (b.zero) continue;
    int n = b.lo;
    auto dk = weight_decompose(g.complex, n - 1);
    auto dn = weight_decompose(g.complex, n);
    auto c = compare_decompositions(dk, dn);
    CHECK(c.a_witness.verify());
  }
}

TEST_CASE("heart splitting") {
  auto id = heart_split(ChainMap::identity(point(0)));
  CHECK(id.witness.verify());
  ChainMap inc(point(0), point(0, 2), [&](int) { return Matrix::from_rows(Z, {{1}, {0}}); });
  auto s = heart_split(inc);
  CHECK(s.witness.verify());
  CHECK(compose(s.retraction, inc) == ChainMap::identity(point(0)));
  // inclusion twisted by a random automorphism of Z[0]^3
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    auto [a, ai] = random_automorphism(rng, Z, 3, 3, 3);
    ChainMap f(point(0, 2), point(0, 3), [&](int) { return a * Matrix::from_rows(Z, {{1, 0}, {0, 1}, {0, 0}}); });
    auto h = heart_split(f);
    CHECK(h.witness.verify());
    CHECK(nullhomotopy(compose(h.retraction, f) - ChainMap::identity(point(0, 2))).has_value());
  }
  ChainMap two(point(0), point(0), [&](int) { return Matrix::from_rows(Z, {{2}}); });
  CHECK_THROWS_AS(heart_split(two), UsageError);  // cofiber Z/2 is not in the heart
}

TEST_CASE("strictify heart") {
  auto s = strictify_heart(point(0), 0);
  CHECK(s.free == point(0));
  CHECK(s.equivalence.verify());
  auto t = strictify_heart(direct_sum(elementary(), point(0)), 0);
  CHECK(t.free == point(0));
  CHECK(t.equivalence.verify());
  Rng rng(3);
  auto [x, iso] = conjugate(rng, direct_sum(point(2, 3), shift(elementary(), 2)), 3, 3);
  auto u = strictify_heart(x, 2);
  CHECK(u.free == point(2, 3));
  CHECK(u.equivalence.verify());
  CHECK_THROWS_AS(strictify_heart(z_mod_2(), 0), UsageError);
}

TEST_CASE("negativity") {
  CHECK(check_negative({point(0)}).negative);
  auto v = check_negative({point(0), point(1)});
  CHECK_FALSE(v.negative);
  REQUIRE_FALSE(v.failures.empty());
  CHECK(v.failures[0].source == 1);
  CHECK(v.failures[0].target == 0);
  CHECK(v.failures[0].shift == 1);
  CHECK(check_negative({}).negative);
}

TEST_CASE("t-structure") {
  CHECK(in_t_geq(point(0), 0));
  CHECK(in_t_leq(point(0), 0));
  CHECK(in_t_leq(z_mod_2(), 0));
  CHECK_FALSE(in_w_leq(z_mod_2(), 0));
  for (std::uint64_t seed = 1; seed <= 80; ++seed) {
    auto g = gen_complex(params(seed));
    for (int n = -3; n <= 3; ++n) {
      CHECK(check_left_adjacent(g.complex, n));
      auto tc = t_cotruncate(g.complex, n);
      CHECK(validate(tc.complex));
      CHECK(check_chain_map(tc.inclusion));
      // τ≥n has H_i = H_i(X) for i >= n and nothing below
      HomologyProfile hx = homology(g.complex), ht = homology(tc.complex);
      for (int i = -4; i <= 4; ++i) CHECK(ht.at(i) == (i >= n ? hx.at(i) : ModulePresentation{}));
      ChainComplex tl = t_truncate(g.complex, n);
      CHECK(in_t_leq(tl, n));
      HomologyProfile hl = homology(tl);
      for (int i = -4; i <= n; ++i) CHECK(hl.at(i) == hx.at(i));
    }
  }
}
