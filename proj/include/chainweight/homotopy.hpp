#pragma once

#include <optional>
#include <vector>

#include "chainweight/constructions.hpp"
#include "chainweight/homology.hpp"

namespace chainweight {

/// π₀ of the mapping space: H_0 of Hom(X, Y). Computed on minimal models.
ModulePresentation pi0_hom(const ChainComplex& x, const ChainComplex& y);
/// Same group computed on the unreduced hom-complex (slow; for cross-checks).
ModulePresentation pi0_hom_direct(const ChainComplex& x, const ChainComplex& y);

/// h with f = d h + h d, found as one linear solve in Hom(X, Y)_1.
std::optional<Homotopy> nullhomotopy(const ChainMap& f);
/// h with f - g = d h + h d.
std::optional<Homotopy> homotopy_between(const ChainMap& f, const ChainMap& g);

/// Contraction s of an acyclic complex (id - 0 = d s + s d), solved degree by
/// degree from the bottom. nullopt when X is not acyclic.
std::optional<Homotopy> contract(const ChainComplex& x);

/// Matrix of φ ↦ post ∘ φ ∘ pre from Hom(X, Y)_n to Hom(X', Y')_n; a null
/// pointer stands for the identity.
Matrix composition_operator(const HomComplex& from, const HomComplex& to, int n, const ChainMap* post,
                            const ChainMap* pre);

/// A chain map φ : P → Q with post∘φ∘pre ≃ target, and the witness.
struct Lift {
  ChainMap map;
  Homotopy witness;  // post∘φ∘pre ≃ target
};
/// Solves for φ and the homotopy jointly as one linear system. nullopt when
/// no such φ exists.
std::optional<Lift> solve_lift(const ChainComplex& p, const ChainComplex& q, const ChainMap* post,
                               const ChainMap* pre, const ChainMap& target);

/// post ∘ h ∘ pre : post∘f∘pre ≃ post∘g∘pre.
Homotopy transport(const ChainMap& post, const Homotopy& h, const ChainMap& pre);
/// f ≃ g and g ≃ k give f ≃ k.
Homotopy concat(const Homotopy& a, const Homotopy& b);
/// f ≃ g gives g ≃ f.
Homotopy reversed(const Homotopy& h);

/// Two-sided homotopy inverse with witnesses.
struct HomotopyEquivalence {
  ChainMap forth;        // X → Y
  ChainMap back;         // Y → X
  Homotopy back_forth;   // back ∘ forth ≃ id_X
  Homotopy forth_back;   // forth ∘ back ≃ id_Y

  Diagnostics verify() const;
};

/// g with g∘f ≃ id and f∘g ≃ id, read off a contraction of cone(f).
std::optional<HomotopyEquivalence> homotopy_inverse(const ChainMap& f);
bool is_quasi_iso(const ChainMap& f);
/// Equivalent to is_quasi_iso for bounded free complexes; when `certify` is
/// set an explicit inverse is also constructed and verified.
bool is_homotopy_equivalence(const ChainMap& f, bool certify = false);

/// Result of cancelling unit entries of the differentials.
/// forth ∘ back = id exactly; back ∘ forth ≃ id via `homotopy`.
struct MinimalModel {
  ChainComplex complex;
  ChainMap forth;     // X → X_min
  ChainMap back;      // X_min → X
  Homotopy homotopy;  // back ∘ forth ≃ id_X
};
MinimalModel minimize(const ChainComplex& x);

/// ⊕_i P(H_i)[i]: free summands in degree i plus [Z --t--> Z] in degrees
/// i+1, i for each invariant factor t of H_i. Degree i basis order:
/// free part of H_i, torsion generators of H_i, then relation cells for H_{i-1}.
ChainComplex standard_complex(const HomologyProfile& profile);

/// X written as its standard complex S plus elementary pieces.
struct StandardForm {
  HomologyProfile profile;
  ChainComplex complex;  // standard_complex(profile)
  ChainMap forth;        // X → S
  ChainMap back;         // S → X, forth ∘ back = id
  Homotopy homotopy;     // back ∘ forth ≃ id_X
  /// Invertible change of basis Φ_i (old → new coordinates) and its inverse
  /// Ψ_i, under which d splits into standard blocks and unit pieces.
  std::vector<Matrix> phi, psi;
  int lo = 0;
  /// unit_pieces[k]: number of elementary [R =1=> R] pieces in degrees
  /// lo+k+1 → lo+k.
  std::vector<std::size_t> unit_pieces;
};
StandardForm diagonalize(const ChainComplex& x);

/// Canonical invariant of the homotopy type: the homology profile.
HomologyProfile homotopy_classify(const ChainComplex& x);
/// Explicit equivalence X ≃ Y when the profiles agree, nullopt otherwise.
std::optional<HomotopyEquivalence> equivalence_between(const ChainComplex& x, const ChainComplex& y);

struct AcyclicSplitting {
  /// (top degree, count): `count` elementary pieces in degrees top, top-1.
  std::vector<std::pair<int, std::size_t>> pieces;
  /// Φ_i, Ψ_i indexed from `lo`; Φ_{i-1} d_i Ψ_i is the elementary block form.
  std::vector<Matrix> phi, psi;
  int lo = 0;
  ChainComplex elementary;  // ⊕ pieces, isomorphic to X via Φ
  Homotopy contraction;     // id_X ≃ 0

  Diagnostics verify(const ChainComplex& x) const;
};
/// Throws MathNegative naming the first nonzero H_i when X is not acyclic.
AcyclicSplitting split_acyclic(const ChainComplex& x);

}  // namespace chainweight
