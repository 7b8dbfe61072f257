#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fracstoch::verify {

enum class Tier { Fast, Full };

Tier tier_from_string(const std::string& name);
std::string to_string(Tier tier);

struct SuiteOptions {
  std::uint64_t seed = 42;
  unsigned threads = 0;  // 0: all cores
  Tier tier = Tier::Full;
};

/// One row of evidence inside a criterion: what was compared, the observed
/// and reference values, the allowed gap and whether it held.
struct Check {
  std::string label;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string method;  // numerical route, e.g. "talbot+gaver-stehfest"
  std::vector<Check> checks;
  std::string error;   // set when the criterion threw
};

constexpr int kCriterionCount = 11;

/// Runs acceptance criterion `id` (1-based). Never throws: library errors
/// are recorded in `error` and fail the criterion.
CriterionResult run_criterion(int id, const SuiteOptions& opt);

std::string criterion_title(int id);

}  // namespace fracstoch::verify
