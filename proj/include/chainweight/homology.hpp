#pragma once

#include <map>
#include <string>

#include "chainweight/complex.hpp"
#include "chainweight/linalg.hpp"

namespace chainweight {

/// H_*(X) as finitely generated modules; degrees with H_i = 0 are not stored,
/// so two profiles compare equal exactly when they agree in every degree.
struct HomologyProfile {
  RingSpec ring;
  std::map<int, ModulePresentation> groups;

  ModulePresentation at(int deg) const;
  bool is_acyclic() const { return groups.empty(); }
  /// Lowest / highest degree with nonzero homology; only valid when not acyclic.
  int lowest() const { return groups.begin()->first; }
  int highest() const { return groups.rbegin()->first; }

  HomologyProfile shifted(int k) const;
  /// Single line, degrees ascending: "H_0: Z/2; H_1: 0".
  std::string to_string(int lo, int hi) const;
  std::string to_string() const;

  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

HomologyProfile direct_sum(const HomologyProfile& a, const HomologyProfile& b);

/// H_i = ker d_i / im d_{i+1}, computed from elementary divisors.
HomologyProfile homology(const ChainComplex& x);
ModulePresentation homology_at(const ChainComplex& x, int deg);
bool is_acyclic(const ChainComplex& x);

}  // namespace chainweight
