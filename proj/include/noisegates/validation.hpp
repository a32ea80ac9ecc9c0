// SPDX-License-Identifier: Apache-2.0
//
// Release-gate suite: oracle equivalences and statistical property checks,
// grouped by acceptance criterion.
#pragma once

#include <cstdint>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace noisegates {

struct CheckResult {
  std::string id;
  int criterion = 0;
  std::string description;
  double measured = 0.0;
  double tolerance = 0.0;
  /// "<=": pass when measured <= tolerance; ">": pass when measured > tolerance.
  std::string relation = "<=";
  bool passed = false;
};

struct ValidationOptions {
  std::uint64_t seed = 0x5eed2024;
  std::size_t trajectories = 100000;
  unsigned workers = 0;
  /// Empty: all criteria.
  std::set<int> criteria;
  /// Substitutes the printed generalized amplitude damping moments for the
  /// corrected table in the trace-preservation check, which must then fail.
  bool inject_printed_gad_moments = false;
};

std::vector<CheckResult> run_validation(const ValidationOptions& opts);

/// One line per check with the measured value against its tolerance.
void write_report(std::ostream& os, const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace noisegates
