#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "chainweight/generate.hpp"
#include "chainweight/io.hpp"

namespace chainweight {

/// Per-trial context handed to a suite: a seeded generator, the (possibly
/// shrunk) parameters, and the property outcomes recorded so far.
class Trial {
 public:
  Trial(const GenParams& params, std::uint64_t seed) : rng(seed), params(params) {}

  Rng rng;
  GenParams params;

  struct Outcome {
    std::string property;
    bool ok;
    std::string message;
  };

  /// Generates a complex with `p` (default: the trial parameters), noting it
  /// as a reproduction input.
  GeneratedComplex complex(const std::string& label);
  GeneratedComplex complex(const std::string& label, const GenParams& p);
  void note(const std::string& label, const ChainComplex& x);
  void check(const std::string& property, bool ok, const std::string& message = "");
  /// Records the diagnostics as one outcome.
  void check(const std::string& property, const Diagnostics& d);

  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  const std::vector<std::pair<std::string, std::string>>& inputs() const { return inputs_; }

 private:
  std::vector<Outcome> outcomes_;
  std::vector<std::pair<std::string, std::string>> inputs_;
};

struct PropertyCount {
  std::string name;
  std::size_t passed = 0, failed = 0;
};

struct TrialFailure {
  std::string property;
  std::size_t trial = 0;
  std::uint64_t seed = 0;  // replays the trial together with `params`
  GenParams shrunk;        // parameters after shrinking
  std::string params;      // describe(shrunk)
  std::string message;
  std::vector<std::pair<std::string, std::string>> inputs;  // label → complex document
};

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<PropertyCount> properties;
  std::vector<TrialFailure> failures;
  double wall_seconds = 0;

  bool passed() const { return failures.empty(); }
  const PropertyCount* property(const std::string& name) const;
  /// Key-value lines; the wall time is left out unless `with_time`, so equal
  /// campaigns give byte-identical text.
  std::string to_text(bool with_time = false) const;
  JsonValue to_json(bool with_time = false) const;
};

struct SuiteInfo {
  std::string name;  // module.property
  std::string description;
};
std::vector<SuiteInfo> suites();
/// Full name for a suite name or unambiguous short alias ("orthogonality");
/// ParseError otherwise.
std::string resolve_suite(const std::string& name);

/// Runs `trials` trials; trial t is seeded with Rng::derive(params.seed, t).
/// Failing trials are shrunk by re-running with smaller parameters.
VerifyReport run_suite(const std::string& name, const GenParams& params, std::size_t trials);

/// Re-runs one trial (control checks included when `control`).
Trial replay_trial(const std::string& name, const GenParams& params, std::uint64_t seed, bool control = false);

std::string describe(const GenParams& p);

}  // namespace chainweight
