#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainweight/homotopy.hpp"

namespace chainweight {

// Membership in the weight structure on bounded free complexes. Over a
// hereditary base these homology criteria are equivalent to "homotopy
// equivalent to a free complex concentrated in the given degrees".

/// H_i(X) = 0 for all i < n.
bool in_w_geq(const ChainComplex& x, int n);
/// H_i(X) = 0 for all i > n, and H_n(X) free (automatic over a field).
bool in_w_leq(const ChainComplex& x, int n);
bool in_heart(const ChainComplex& x);

struct WeightBounds {
  bool zero = true;  // X is a zero object
  int lo = 0, hi = 0;

  std::string to_string() const;
  friend bool operator==(const WeightBounds&, const WeightBounds&) = default;
};
WeightBounds weight_bounds(const ChainComplex& x);

/// Keeps degrees in [lo, hi] verbatim.
ChainComplex brutal_truncation(const ChainComplex& x, int lo, int hi);

/// A → X → B, degreewise split exact, with A ∈ w≤n and B ∈ w≥n+1.
struct WeightDecomposition {
  int n = 0;
  ChainComplex x, a, b;
  ChainMap i_map;  // A → X
  ChainMap p_map;  // X → B

  /// Checks memberships, degreewise split exactness, and that the induced
  /// map cone(i) → B is a homotopy equivalence (with an explicit inverse).
  Diagnostics verify() const;
};
/// Brutal truncation: A = σ≤n X, B = σ≥n+1 X. Verified before return.
WeightDecomposition weight_decompose(const ChainComplex& x, int n);

struct OrthogonalityVerdict {
  bool trivial = true;
  ModulePresentation group;  // π₀ Hom(X, Y)
};
/// UsageError unless X ∈ w≤n and Y ∈ w≥n+1.
OrthogonalityVerdict check_orthogonality(const ChainComplex& x, const ChainComplex& y, int n);

struct DecompositionComparison {
  ChainMap a;          // A_n → A_m
  ChainMap b;          // B_n → B_m
  Homotopy a_witness;  // i_m ∘ a ≃ i_n
  Homotopy b_witness;  // b ∘ p_n ≃ p_m
  /// Both maps are unique up to homotopy: π₀Hom(A_n, Σ⁻¹B_m) = 0 and
  /// π₀Hom(ΣA_n, B_m) = 0.
  bool unique = false;
};
/// Maps between two decompositions of the same X with n ≤ m.
DecompositionComparison compare_decompositions(const WeightDecomposition& dn, const WeightDecomposition& dm);

struct HeartSplitting {
  ChainMap retraction;  // g : Y → X
  Homotopy witness;     // g ∘ f ≃ id_X
};
/// For f : X → Y with X, Y and cone(f) in the heart. UsageError when a
/// membership fails; InvariantViolation if no retraction exists.
HeartSplitting heart_split(const ChainMap& f);

struct Strictification {
  ChainComplex free;  // R^k concentrated in degree n
  HomotopyEquivalence equivalence;  // X ≃ free
};
/// For X ∈ w=n (UsageError otherwise).
Strictification strictify_heart(const ChainComplex& x, int n);

struct NegativityFailure {
  std::size_t source, target;
  int shift;
  ModulePresentation group;  // π₀Hom(S, Σⁿ S')
};
struct NegativityVerdict {
  bool negative = true;
  std::vector<NegativityFailure> failures;
};
/// π₀Hom(S, Σⁿ S') = 0 for every ordered pair and every n > 0 where the
/// hom-complex can be nonzero.
NegativityVerdict check_negative(const std::vector<ChainComplex>& objects);

// Adjacent t-structure (homological truncations).

struct TCotruncation {
  ChainComplex complex;  // ... → X_{n+1} → Z_n
  ChainMap inclusion;    // into X
};
/// τ≥n X as the subcomplex with Z_n = ker d_n in degree n.
TCotruncation t_cotruncate(const ChainComplex& x, int n);
/// τ≤n X realized as cone(τ≥n+1 X → X).
ChainComplex t_truncate(const ChainComplex& x, int n);
/// True iff τ≥n X → X is a quasi-isomorphism.
bool in_t_geq(const ChainComplex& x, int n);
/// H_i(X) = 0 for i > n; no freeness condition.
bool in_t_leq(const ChainComplex& x, int n);
/// in_t_geq(X, n) ⟺ in_w_geq(X, n).
bool check_left_adjacent(const ChainComplex& x, int n);

}  // namespace chainweight
