#pragma once

#include <limits>
#include <string>
#include <vector>

#include "chainweight/homotopy.hpp"
#include "chainweight/weights.hpp"

namespace chainweight {

/// Bounded cellular filtration A_{lo-1} → A_lo → … → A_hi. Stages are constant
/// outside [lo-1, hi]: A_k = A_{lo-1} below and A_k = A_hi above.
struct CellFiltration {
  int lo = 0, hi = -1;
  std::vector<ChainComplex> stages;  // A_{lo-1}, …, A_hi
  std::vector<ChainMap> inclusions;  // inclusions[k-lo] : A_{k-1} → A_k

  RingSpec ring() const { return stages.front().ring(); }
  const ChainComplex& stage(int k) const;
  /// A_{k-1} → A_k; the identity outside [lo, hi].
  ChainMap inclusion(int k) const;
  /// A_j → A_k for j <= k.
  ChainMap inclusion(int j, int k) const;
  const ChainComplex& limit() const { return stages.front(); }
  const ChainComplex& colimit() const { return stages.back(); }

  friend bool operator==(const CellFiltration& a, const CellFiltration& b);
};

/// Q_k = A_k / A_{k-1} with the projection from A_k.
SplitQuotient level_quotient(const CellFiltration& f, int k);

/// A_k = σ≤k X with Q_k = X_k placed in degree k.
CellFiltration skeletal_filtration(const ChainComplex& x);

/// Stages constant at A_n above n.
CellFiltration truncate_filtration(const CellFiltration& f, int n);
/// Stages constant at A_n below n. The result is a relative filtration when
/// A_n is not acyclic.
CellFiltration cotruncate_filtration(const CellFiltration& f, int n);

/// Shapes, split inclusions, acyclic limit (unless `relative`), quotient
/// weights [k, k] and in_w_leq(A_k, k). Reports the first failing level.
Diagnostics verify_cell_filtration(const CellFiltration& f, bool relative = false);

struct VAcyclicity {
  bool acyclic = false;
  /// When acyclic: weight_bounds(A_k) for k = lo-1 … hi, each [k, k] or zero.
  std::vector<WeightBounds> stage_bounds;
};
/// Colimit stage acyclic. When it is, every stage must have weight exactly
/// its level; a violation throws InvariantViolation.
VAcyclicity is_v_acyclic(const CellFiltration& f);

/// Levelwise maps f_k : A_k → B_k with the squares
/// f_k ∘ ι^A ≃ ι^B ∘ f_{k-1} witnessed by homotopies.
struct FiltrationMap {
  CellFiltration source, target;
  int lo = 0;                   // levels[k-lo] = f_k, k from lo to hi
  std::vector<ChainMap> levels;
  std::vector<Homotopy> squares;  // squares[k-lo-1] for the square ending at k
  bool strict = true;           // every square commutes on the nose

  int hi() const { return lo + static_cast<int>(levels.size()) - 1; }
  const ChainMap& at(int k) const;
};
/// Builds the map from its levels, solving for square witnesses; UsageError if
/// some square does not commute up to homotopy.
FiltrationMap make_filtration_map(const CellFiltration& source, const CellFiltration& target,
                                  const std::function<Matrix(int level, int degree)>& component);

/// The latching map A_j ∪_{A_i} B_i → B_j for i < j (homotopy pushout).
ChainMap latching_map(const FiltrationMap& f, int i, int j);
/// Every latching map has cofiber of weight within [i+1, j].
bool is_ingression(const FiltrationMap& f);

struct MappingCylinder {
  /// (Mf)_i = cone(A_{i-1} → B_i ⊕ A_i), the homotopy pushout B_i ∪_{A_{i-1}} A_i.
  CellFiltration filtration;
  FiltrationMap ingression;   // A → Mf
  FiltrationMap equivalence;  // B → Mf
  /// The colimit-stage component of B → Mf, with an explicit inverse.
  HomotopyEquivalence colimit_equivalence;
};
/// Requires a strictly commuting map (UsageError otherwise).
MappingCylinder mapping_cylinder_filtration(const FiltrationMap& f);
/// (Mf)_{i+1}/(Mf)_i ≃ A_{i+1}/A_i ⊕ B_{i+1}/B_i ⊕ Σ(A_i/A_{i-1}) on homotopy
/// profiles, at every level.
Diagnostics check_wedge_formula(const FiltrationMap& f, const MappingCylinder& m);

constexpr int kInfiniteConnectivity = std::numeric_limits<int>::max();
/// Largest n with cone(f) ∈ w≥n+1; kInfiniteConnectivity for equivalences.
int connectivity(const ChainMap& f);
std::string connectivity_string(int c);

/// X = X_n → X_{n+1} → … → X_m ≃ Y. Each X_k = X ⊕_τ σ≤k S is a twisted sum
/// of X with the standard form S of cone(f), so every quotient is S_k in
/// degree k.
struct ConnectedFactorization {
  int n = 0;
  std::vector<ChainComplex> stages;  // X_n … X_m
  std::vector<ChainMap> inclusions;  // X_{k-1} → X_k
  HomotopyEquivalence equivalence;   // X_m → Y
  Homotopy witness;                  // equivalence.forth ∘ (X → X_m) ≃ f

  int top() const { return n + static_cast<int>(stages.size()) - 1; }
  ChainMap composite() const;  // X → X_m
  Diagnostics verify(const ChainMap& f) const;
};
/// MathNegative when f is not n-connected.
ConnectedFactorization factor_connected_map(const ChainMap& f, int n);

struct ConnectivityVerdict {
  int f = 0, g = 0, composite = 0;
};
/// connectivity(g∘f) >= min(connectivity(f), connectivity(g)); a violation
/// throws InvariantViolation.
ConnectivityVerdict compose_connectivity_check(const ChainMap& f, const ChainMap& g);

}  // namespace chainweight
