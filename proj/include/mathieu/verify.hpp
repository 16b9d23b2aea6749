#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace mathieu {

struct CheckRecord {
  std::string id;
  std::string suite;
  bool passed = false;
  /// Measured discrepancy; 0 for exact checks that pass, mismatch count otherwise.
  double value = 0;
  /// Threshold value was held against; 0 for exact checks.
  double tol = 0;
  std::string detail;
};

struct UnknownSuite : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

const std::vector<std::string>& suite_names();

/// Runs every check of one suite concurrently; records come back sorted by id.
///
/// claims     exact reproductions, odd-order vanishing, round trips
/// operators  quadrature of p_m against D_m on the base period; tol bounds
///            m = 1, 2 and 10 * tol bounds m = 3, 4
/// crosscheck monodromy against Hill and the two asymptotic regimes; tol is
///            the integrator tolerance
std::vector<CheckRecord> run_suite(const std::string& suite, double tol);

bool all_passed(const std::vector<CheckRecord>& records);

nlohmann::json to_json(const CheckRecord& r);

}  // namespace mathieu
