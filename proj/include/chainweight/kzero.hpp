#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "chainweight/filtration.hpp"

namespace chainweight {

/// A class in K₀ of the heart, identified with ℤ by rank.
struct K0Class {
  long value = 0;

  K0Class operator+(K0Class o) const { return {value + o.value}; }
  K0Class operator-() const { return {-value}; }
  friend bool operator==(K0Class, K0Class) = default;
};

/// Σ (-1)^i rank X_i.
K0Class euler_char(const ChainComplex& x);
/// Σ (-1)^i free_rank H_i(X).
K0Class euler_char_homology(const ChainComplex& x);
/// Σ (-1)^k rank of the free model of each level quotient. UsageError when the
/// filtration does not verify.
K0Class k0_via_filtration(const CellFiltration& f);

/// [F₁ → F₀] in degrees 1, 0 resolving coker(R : R^r → R^g), with H₁ = 0. The
/// columns of R are the relations.
ChainComplex resolve_module(const Matrix& relations);

struct BondarkoReport {
  K0Class euler, euler_homology;
  /// k0_via_filtration on the skeletal filtration of X, then of each conjugate.
  std::vector<K0Class> filtration_values;
};
/// All values must agree; a disagreement throws InvariantViolation.
BondarkoReport check_bondarko_k0(const ChainComplex& x, std::size_t trials, std::uint64_t seed = 1);

}  // namespace chainweight
