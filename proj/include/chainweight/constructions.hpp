#pragma once

#include <optional>
#include <vector>

#include "chainweight/complex.hpp"
#include "chainweight/homology.hpp"

namespace chainweight {

// Sign conventions (homological grading throughout):
//   (Σ^k X)_i = X_{i-k},          d = (-1)^k d_X
//   cone(f)_i = X_{i-1} ⊕ Y_i,    d(x, y) = (-d x, d y - f x)
//   Cyl(f)_i = X_i ⊕ X_{i-1} ⊕ Y_i, d(x, x', y) = (d x + x', -d x', d y - f x')
//   Hom(X,Y)_n = ⊕_i Hom(X_i, Y_{i+n}), ∂φ = d_Y φ - (-1)^n φ d_X
// With these, degree-0 cycles of Hom are chain maps and degree-0 boundaries
// are the maps d h + h d.

ChainComplex shift(const ChainComplex& x, int k);
/// Reduces an integral complex modulo p; identity when the ring already matches.
ChainComplex change_ring(const ChainComplex& x, const RingSpec& ring);
/// Σ^k f with components f_{i-k}.
ChainMap shift(const ChainMap& f, int k);

/// Degreewise block sum; X's basis comes first.
ChainComplex direct_sum(const ChainComplex& x, const ChainComplex& y);
ChainMap direct_sum(const ChainMap& f, const ChainMap& g);
/// Inclusions and projections of the two summands of X ⊕ Y.
ChainMap summand_inclusion(const ChainComplex& x, const ChainComplex& y, bool second);
ChainMap summand_projection(const ChainComplex& x, const ChainComplex& y, bool second);

struct Cone {
  ChainComplex complex;
  ChainMap from_target;    // Y → cone(f)
  ChainMap to_suspension;  // cone(f) → ΣX
};
Cone cone(const ChainMap& f);

struct Cylinder {
  ChainComplex complex;
  ChainMap inclusion;   // X → Cyl, degreewise split mono
  ChainMap projection;  // Cyl → Y, projection ∘ inclusion = f
  ChainMap section;     // Y → Cyl, projection ∘ section = id
  Homotopy homotopy;    // section ∘ projection ≃ id
  ChainMap quotient;    // Cyl → cone(f), kills the X summand
};
Cylinder cylinder(const ChainMap& f);

/// Y/X for a degreewise split monomorphism i : X → Y, on chosen complements.
struct SplitQuotient {
  ChainComplex complex;
  ChainMap projection;  // Y → Y/X, kernel im i
  /// Degreewise sections of the projection (not chain maps in general).
  std::function<Matrix(int)> section;
};
/// UsageError naming the first degree where i is not a split monomorphism.
SplitQuotient split_quotient(const ChainMap& i);

/// The hom-complex together with the coordinate bookkeeping that turns its
/// vectors back into degreewise families of matrices.
class HomComplex {
 public:
  HomComplex(const ChainComplex& x, const ChainComplex& y);

  const ChainComplex& complex() const { return complex_; }
  const ChainComplex& source() const { return x_; }
  const ChainComplex& target() const { return y_; }

  /// Column vector in Hom_n from φ_i : X_i → Y_{i+n}.
  Matrix flatten(int n, const std::function<Matrix(int)>& component) const;
  Matrix flatten(const ChainMap& f) const;
  /// φ_i for vector v in Hom_n.
  Matrix component(int n, const Matrix& v, int i) const;
  ChainMap to_map(const Matrix& v) const;

 private:
  std::size_t offset(int n, int i) const;

  ChainComplex x_, y_, complex_;
};

}  // namespace chainweight
