#include <doctest.h>

#include "chainweight/errors.hpp"
#include "chainweight/generate.hpp"
#include "chainweight/io.hpp"

using namespace chainweight;

namespace {
const RingSpec Z = RingSpec::integers();
}

TEST_CASE("complex documents") {
  const char* text = R"({"ring": "Z", "min_degree": 0, "ranks": [1, 1], "differentials": [[[2]]]})";
  ChainComplex x = parse_complex(text);
  CHECK(x == ChainComplex::two_term(1, Matrix::from_rows(Z, {{2}})));
  CHECK(serialize_complex(x) == text);

  ChainComplex f = parse_complex(R"({"ring":"Fp","p":5,"min_degree":-1,"ranks":[2,1],"differentials":[[[7],[-1]]]})");
  CHECK(f.ring() == RingSpec::prime_field(5));
  CHECK(f.d(0) == Matrix::from_rows(RingSpec::prime_field(5), {{2}, {4}}));

  ChainComplex zero = parse_complex(R"({"ring": "Z", "min_degree": 3, "ranks": [], "differentials": []})");
  CHECK(zero.is_zero());
  CHECK(parse_complex(serialize_complex(zero)) == zero);

  // integers beyond 64 bits survive
  const char* big = R"({"ring": "Z", "min_degree": 0, "ranks": [1, 1], "differentials": [[[123456789012345678901234567890]]]})";
  CHECK(serialize_complex(parse_complex(big)) == big);
}

TEST_CASE("malformed documents are rejected") {
  const char* bad[] = {
      "not json",
      R"([1, 2])",
      R"({"ring": "Q", "min_degree": 0, "ranks": [1], "differentials": []})",
      R"({"ring": "Fp", "p": 4, "min_degree": 0, "ranks": [1], "differentials": []})",
      R"({"ring": "Z", "p": 5, "min_degree": 0, "ranks": [1], "differentials": []})",
      R"({"ring": "Z", "min_degree": 0, "ranks": [1, 1], "differentials": []})",
      R"({"ring": "Z", "min_degree": 0, "ranks": [1, 1], "differentials": [[[1, 2]]]})",
      R"({"ring": "Z", "min_degree": 0, "ranks": [1, 1], "differentials": [[[1.5]]]})",
      R"({"ring": "Z", "min_degree": 0, "ranks": [1, 1, 1], "differentials": [[[1]], [[1]]]})",
      R"({"ring": "Z", "min_degree": 0, "ranks": [-1], "differentials": []})",
      R"({"ring": "Z", "ring": "Z", "min_degree": 0, "ranks": [], "differentials": []})",
      R"({"ring": "Z", "min_degree": 0, "ranks": [], "differentials": [], "extra": 1})",
  };
  for (const char* t : bad) CHECK_THROWS_AS(parse_complex(t), ParseError);
  try {
    parse_complex(R"({"ring": "Z", "min_degree": 0, "ranks": [1, 1, 1], "differentials": [[[1]], [[1]]]})");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
}

TEST_CASE("round trip on generated complexes and maps") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GenParams p;
    p.seed = seed;
    if (seed % 3 == 0) p.ring = RingSpec::prime_field(7);
    auto x = gen_complex(p).complex;
    std::string s = serialize_complex(x);
    CHECK(parse_complex(s) == x);
    CHECK(serialize_complex(parse_complex(s)) == s);
    p.seed = seed + 1000;
    auto y = gen_complex(p).complex;
    auto f = gen_chain_map(seed, x, y);
    CHECK(parse_map(serialize_map(f), x, y) == f);
  }
}

TEST_CASE("map documents") {
  ChainComplex x = ChainComplex::concentrated(Z, 0, 1);
  ChainComplex y = ChainComplex::concentrated(Z, 0, 2);
  ChainMap f = parse_map(R"({"components": [{"source_degree": 0, "target_degree": 0, "matrix": [[1], [3]]}]})", x, y);
  CHECK(f.at(0) == Matrix::from_rows(Z, {{1}, {3}}));
  CHECK(parse_map(R"({"components": []})", x, y).is_zero());
  CHECK_THROWS_AS(parse_map(R"({"components": [{"source_degree": 0, "target_degree": 1, "matrix": []}]})", x, y),
                  ParseError);
  CHECK_THROWS_AS(parse_map(R"({"components": [{"source_degree": 0, "target_degree": 0, "matrix": [[1]]}]})", x, y),
                  ParseError);
  ChainComplex c = ChainComplex::two_term(1, Matrix::from_rows(Z, {{2}}));
  // not a chain map: degree 1 → 0 square fails
  CHECK_THROWS_AS(parse_map(R"({"components": [{"source_degree": 0, "target_degree": 0, "matrix": [[1]]}]})", c, c),
                  ParseError);
}
