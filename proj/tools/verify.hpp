#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace corrtree {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  // Times a query visited more nodes (or an update wrote more of them)
  // than the structure's stated worst case allows.
  std::int64_t bound_violations = 0;
  std::string first_failure;
};

struct VerifyOptions {
  std::uint64_t seed = 2026;
  int cases = 200;  // per suite
  // Deliberately corrupts one expected answer so the harness itself can be
  // tested: a run with this set must report a failure.
  bool inject_fault = false;
};

// Randomized cross-checks of every structure against a brute-force oracle:
// tournament trees, both correlation tree layouts, capped pair enumeration,
// the max-inner-product reduction, and the three-way trainer equivalence.
std::vector<SuiteResult> run_verification(const VerifyOptions& options);

bool all_passed(const std::vector<SuiteResult>& results);

std::string format_suite_line(const SuiteResult& result);

}  // namespace corrtree
