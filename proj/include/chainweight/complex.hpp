#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chainweight/matrix.hpp"

namespace chainweight {

/// Outcome of a structural check: ok, or the first violation found.
struct Diagnostics {
  bool ok = true;
  std::optional<int> degree;
  std::string message;

  static Diagnostics pass() { return {}; }
  static Diagnostics fail(std::optional<int> degree, std::string message) {
    return {false, degree, std::move(message)};
  }
  explicit operator bool() const { return ok; }
};

/// Bounded complex of finitely generated free modules, homologically graded:
/// d_i maps degree i to degree i-1. Degrees outside [min_degree, max_degree]
/// have rank 0; the zero complex has max_degree = min_degree - 1.
class ChainComplex {
 public:
  explicit ChainComplex(RingSpec ring = {}, int min_degree = 0);
  /// diffs[j] is d_{min_degree+j+1}, of shape ranks[j] × ranks[j+1]. Shapes are
  /// checked here; d² = 0 is checked by validate().
  ChainComplex(RingSpec ring, int min_degree, std::vector<std::size_t> ranks, std::vector<Matrix> diffs);

  static ChainComplex concentrated(RingSpec ring, int degree, std::size_t rank);
  /// [X_top --d--> X_{top-1}].
  static ChainComplex two_term(int top_degree, const Matrix& d);

  const RingSpec& ring() const { return ring_; }
  int min_degree() const { return min_; }
  int max_degree() const { return min_ + static_cast<int>(ranks_.size()) - 1; }
  bool in_range(int deg) const { return deg >= min_ && deg <= max_degree(); }

  std::size_t rank(int deg) const { return in_range(deg) ? ranks_[static_cast<std::size_t>(deg - min_)] : 0; }
  const std::vector<std::size_t>& ranks() const { return ranks_; }
  std::size_t total_rank() const;
  /// True when every module is zero (not merely acyclic).
  bool is_zero() const { return total_rank() == 0; }

  /// d_deg : X_deg → X_{deg-1}, shape rank(deg-1) × rank(deg), for any degree.
  const Matrix& d(int deg) const;

  /// Same complex with zero-rank end degrees removed.
  ChainComplex trimmed() const;

  std::string to_string() const;

  /// Equality as complexes: same ring, same modules and differentials in
  /// every degree (zero-rank padding ignored).
  friend bool operator==(const ChainComplex& a, const ChainComplex& b);

 private:
  RingSpec ring_;
  int min_ = 0;
  std::vector<std::size_t> ranks_;
  // diffs_[k] = d_{min_+k} for k in [0, ranks_.size()], boundary ones empty.
  std::vector<Matrix> diffs_;
  Matrix zero_;
};

/// d² = 0 and shape coherence; reports the first failing degree.
Diagnostics validate(const ChainComplex& x);

/// Degreewise matrices f_i : X_i → Y_i. Components are stored for every degree
/// of the union of both supports.
class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(ChainComplex source, ChainComplex target, const std::function<Matrix(int)>& component);

  static ChainMap zero(const ChainComplex& source, const ChainComplex& target);
  static ChainMap identity(const ChainComplex& x);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(components_.size()) - 1; }
  /// f_deg, shape target.rank(deg) × source.rank(deg).
  const Matrix& at(int deg) const;

  bool is_zero() const;

  ChainMap operator+(const ChainMap& other) const;
  ChainMap operator-(const ChainMap& other) const;
  ChainMap operator-() const;

  friend bool operator==(const ChainMap& a, const ChainMap& b);

 private:
  ChainComplex source_, target_;
  int lo_ = 0;
  std::vector<Matrix> components_;
  Matrix zero_;
};

/// g ∘ f; UsageError unless f.target and g.source have the same shape.
ChainMap compose(const ChainMap& g, const ChainMap& f);

/// d^Y_i f_i = f_{i-1} d^X_i for all i.
Diagnostics check_chain_map(const ChainMap& f);

/// Witness that `from` and `to` agree in the homotopy category:
/// from_i - to_i = d_{i+1} h_i + h_{i-1} d_i, with h_i : X_i → Y_{i+1}.
class Homotopy {
 public:
  Homotopy() = default;
  Homotopy(ChainMap from, ChainMap to, const std::function<Matrix(int)>& component);

  const ChainMap& from() const { return from_; }
  const ChainMap& to() const { return to_; }
  const ChainComplex& source() const { return from_.source(); }
  const ChainComplex& target() const { return from_.target(); }
  /// h_deg : X_deg → Y_{deg+1}.
  Matrix at(int deg) const;

  Diagnostics verify() const;

 private:
  ChainMap from_, to_;
  int lo_ = 0;
  std::vector<Matrix> components_;
};

}  // namespace chainweight
