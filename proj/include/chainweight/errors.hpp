#pragma once

#include <stdexcept>
#include <string>

namespace chainweight {

// Caller misuse: shape or ring mismatch, violated precondition.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed external input (documents, suite names).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mathematical negative that the caller asked to be treated as an error,
// e.g. split_acyclic on a complex with nonzero homology.
class MathNegative : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A certificate that the theory guarantees has failed. Seeing one of these
// means the implementation is wrong.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace chainweight
