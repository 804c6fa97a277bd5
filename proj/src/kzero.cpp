#include "chainweight/kzero.hpp"

#include "chainweight/errors.hpp"
#include "chainweight/generate.hpp"

namespace chainweight {

namespace {

long sign(int i) { return i % 2 == 0 ? 1 : -1; }

}  // namespace

K0Class euler_char(const ChainComplex& x) {
  K0Class c;
  for (int i = x.min_degree(); i <= x.max_degree(); ++i) c.value += sign(i) * static_cast<long>(x.rank(i));
  return c;
}

K0Class euler_char_homology(const ChainComplex& x) {
  K0Class c;
  for (const auto& [i, g] : homology(x).groups) c.value += sign(i) * static_cast<long>(g.free_rank);
  return c;
}

K0Class k0_via_filtration(const CellFiltration& f) {
  if (auto d = verify_cell_filtration(f); !d) throw UsageError("k0_via_filtration: " + d.message);
  K0Class c;
  for (int k = f.lo; k <= f.hi; ++k) {
    ChainComplex q = level_quotient(f, k).complex;
    c.value += sign(k) * static_cast<long>(strictify_heart(q, k).free.rank(k));
  }
  return c;
}

ChainComplex resolve_module(const Matrix& relations) {
  // R·V restricted to the first rank(R) columns has the image of R and is injective.
  auto snf = smith_normal_form(relations);
  Matrix d = relations * snf.V.block(0, 0, relations.cols(), snf.rank());
  return ChainComplex(relations.ring(), 0, {relations.rows(), snf.rank()}, {d});
}

BondarkoReport check_bondarko_k0(const ChainComplex& x, std::size_t trials, std::uint64_t seed) {
  BondarkoReport r{euler_char(x), euler_char_homology(x), {}};
  if (!(r.euler == r.euler_homology))
    throw InvariantViolation("Euler characteristic " + std::to_string(r.euler.value) + " but homology gives " +
                             std::to_string(r.euler_homology.value));
  r.filtration_values.push_back(k0_via_filtration(skeletal_filtration(x)));
  Rng rng(seed);
  for (std::size_t t = 0; t < trials; ++t) {
    auto [y, iso] = conjugate(rng, x, 3, 3);
    r.filtration_values.push_back(k0_via_filtration(skeletal_filtration(y)));
  }
  for (std::size_t t = 0; t < r.filtration_values.size(); ++t)
    if (!(r.filtration_values[t] == r.euler))
      throw InvariantViolation("filtration " + std::to_string(t) + " gives K0 class " +
                               std::to_string(r.filtration_values[t].value) + ", expected " +
                               std::to_string(r.euler.value));
  return r;
}

}  // namespace chainweight
