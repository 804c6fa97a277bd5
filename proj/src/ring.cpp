#include "chainweight/ring.hpp"

#include "chainweight/errors.hpp"

namespace chainweight {

RingSpec RingSpec::prime_field(unsigned long p) {
  if (p < 2 || mpz_probab_prime_p(mpz_class(p).get_mpz_t(), 40) == 0)
    throw UsageError("prime field modulus " + std::to_string(p) + " is not prime");
  return RingSpec(RingKind::PrimeField, p);
}

bool RingSpec::is_unit(const mpz_class& x) const {
  if (kind_ == RingKind::PrimeField) return reduced(x) != 0;
  return x == 1 || x == -1;
}

mpz_class RingSpec::inverse(const mpz_class& x) const {
  if (!is_unit(x)) throw UsageError("inverse of non-unit " + x.get_str() + " over " + name());
  if (kind_ == RingKind::Integers) return x;
  mpz_class inv;
  mpz_class mod(p_);
  mpz_invert(inv.get_mpz_t(), reduced(x).get_mpz_t(), mod.get_mpz_t());
  return inv;
}

std::string RingSpec::name() const {
  return kind_ == RingKind::Integers ? "Z" : "F" + std::to_string(p_);
}

RingSpec RingSpec::parse(const std::string& s) {
  if (s == "Z") return integers();
  if (s.size() > 1 && s[0] == 'F') {
    try {
      std::size_t used = 0;
      unsigned long p = std::stoul(s.substr(1), &used);
      if (used == s.size() - 1) return prime_field(p);
    } catch (const std::logic_error&) {
    }
  }
  throw UsageError("ring expects Z or F<p>, got " + s);
}

void require_same_ring(const RingSpec& a, const RingSpec& b, const char* what) {
  if (!(a == b)) throw UsageError(std::string(what) + ": ring mismatch (" + a.name() + " vs " + b.name() + ")");
}

}  // namespace chainweight
