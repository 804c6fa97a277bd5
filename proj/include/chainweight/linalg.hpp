#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "chainweight/matrix.hpp"

namespace chainweight {

/// U·M·V = D with U, V invertible over the ring. `elementary_divisors` lists
/// the nonzero diagonal entries of D in order; over ℤ they are positive and
/// form a divisibility chain, over 𝔽_p they are all 1.
struct SmithForm {
  Matrix U, D, V;
  std::vector<mpz_class> elementary_divisors;

  std::size_t rank() const { return elementary_divisors.size(); }
};

/// A finitely generated module: free part plus invariant factors > 1.
struct ModulePresentation {
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  /// "0", "Z", "Z^2 + Z/2", "F5^3".
  std::string to_string(const RingSpec& ring) const;

  friend bool operator==(const ModulePresentation&, const ModulePresentation&) = default;
};

SmithForm smith_normal_form(const Matrix& m);

/// Rank and elementary divisors only, without transforms.
std::vector<mpz_class> elementary_divisors(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Columns form a basis of {x : Mx = 0}; over ℤ the basis is saturated.
Matrix kernel_basis(const Matrix& m);

/// coker(M : R^cols → R^rows).
ModulePresentation cokernel_invariants(const Matrix& m);

/// Solves M·X = B for every column of B at once. nullopt when some column has
/// no solution over the ring; UsageError on shape mismatch.
std::optional<Matrix> solve(const Matrix& m, const Matrix& b);

/// S with M·S = I, if one exists over the ring.
std::optional<Matrix> right_inverse(const Matrix& m);

/// Two-sided inverse of a square matrix, if it is invertible over the ring.
std::optional<Matrix> inverse(const Matrix& m);

/// Column echelon form M·V = H with V invertible over the ring, up to a row
/// order: column j < rank has its pivot in pivot_rows[j] and vanishes on
/// pivot_rows[0..j), and the remaining columns of H are zero. The last cols - rank columns of V span ker M (a
/// saturated basis over ℤ). Cheaper than the Smith form and enough for kernels
/// and solving.
struct ColumnEchelon {
  Matrix H, V;
  std::vector<std::size_t> pivot_rows;

  std::size_t rank() const { return pivot_rows.size(); }
};
ColumnEchelon column_echelon(const Matrix& m);

/// Caches the echelon form of M for repeated solves against it.
class EchelonSolver {
 public:
  explicit EchelonSolver(const Matrix& m);

  std::size_t rank() const { return e_.rank(); }
  std::optional<Matrix> solve(const Matrix& b) const;

 private:
  ColumnEchelon e_;
};

/// Smith decomposition that additionally returns U⁻¹ and V⁻¹, used by
/// change-of-basis code that needs both directions.
struct SmithFormWithInverses {
  SmithForm form;
  Matrix U_inv, V_inv;
};
SmithFormWithInverses smith_normal_form_with_inverses(const Matrix& m);

/// Injective with saturated image (all elementary divisors units, full column rank).
bool is_split_mono(const Matrix& m);
bool is_split_epi(const Matrix& m);

/// For a split monomorphism i : R^m → R^n: c : R^n → R^{n-m} with kernel im i,
/// and s with c·s = I, so that R^n = im i ⊕ im s.
struct SplitCokernel {
  Matrix c, s;
};
std::optional<SplitCokernel> split_cokernel(const Matrix& i);

}  // namespace chainweight
