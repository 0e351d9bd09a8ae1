#pragma once

// Property suites behind `wwbnf verify`: inequality sweeps, the coefficient
// oracle, the homological residual and the bracket cancellation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "birkhoff.hpp"

namespace wwbnf {

struct VerifyConfig {
  std::int64_t lemma_max_j = 1000;
  std::int64_t oracle_max_j = 20;
  double oracle_tol = 1e-12;
  double resonance_tol = kDefaultResonanceTol;
  std::int64_t bnf_max_j = 64;
  int homological_instances = 50;
  int homological_keys = 200;
  std::int64_t homological_max_index = 30;
  double homological_tol = 1e-12;
  double bracket_tol = 1e-13;
  std::uint64_t seed = 1;
  int threads = 1;
  /// When set, this table is checked against the oracle instead of the closed form.
  std::optional<std::string> table_path;

  void validate() const;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      ///< measured quantity (violations, max error, residual)
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const;
};

VerifyReport run_verify(const PhysicalParams& p, const VerifyConfig& cfg);

/// Random homological input: n keys with indices in [-max_index, max_index], plus
/// the two (2;1,1) keys, drawn from a seeded generator.
HomologicalCoefficients random_homological_input(std::uint64_t seed, int n, std::int64_t max_index);

}  // namespace wwbnf
