#pragma once

#include <gmpxx.h>

#include <string>

namespace chainweight {

enum class RingKind { Integers, PrimeField };

/// Base ring of every matrix and complex: either ℤ or 𝔽_p for a prime p.
class RingSpec {
 public:
  RingSpec() = default;

  static RingSpec integers() { return RingSpec{}; }
  /// Throws UsageError unless p is prime.
  static RingSpec prime_field(unsigned long p);

  RingKind kind() const { return kind_; }
  bool is_field() const { return kind_ == RingKind::PrimeField; }
  unsigned long modulus() const { return p_; }

  /// Brings x into canonical form: [0, p) over 𝔽_p, unchanged over ℤ.
  void reduce(mpz_class& x) const {
    if (kind_ == RingKind::PrimeField) mpz_fdiv_r_ui(x.get_mpz_t(), x.get_mpz_t(), p_);
  }
  mpz_class reduced(mpz_class x) const {
    reduce(x);
    return x;
  }
  bool is_unit(const mpz_class& x) const;
  /// Inverse of a unit. Throws UsageError for non-units.
  mpz_class inverse(const mpz_class& x) const;

  /// "Z" or "F<p>".
  std::string name() const;
  /// Inverse of name(): "Z" or "F<p>".
  static RingSpec parse(const std::string& name);

  friend bool operator==(const RingSpec& a, const RingSpec& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  RingSpec(RingKind kind, unsigned long p) : kind_(kind), p_(p) {}

  RingKind kind_ = RingKind::Integers;
  unsigned long p_ = 0;
};

/// Throws UsageError when the rings differ.
void require_same_ring(const RingSpec& a, const RingSpec& b, const char* what);

}  // namespace chainweight
