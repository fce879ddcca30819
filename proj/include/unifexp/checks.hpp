#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "unifexp/kernel/exact_scalar.hpp"

namespace unifexp::checks {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Suites: kernel, bessel, legendre, oracle, all. Unknown names throw UsageError.
std::vector<CheckResult> run_suite(std::string_view suite);

// p/q with |p| <= max_num, 1 <= q <= max_den.
kernel::Rational random_rational(std::mt19937_64& rng, long max_num = 40, long max_den = 24);
kernel::Rational random_positive_rational(std::mt19937_64& rng, long max_num = 40, long max_den = 24);

// Fixed (g, zeta) pairs used by the endpoint and log-cancellation invariants.
std::vector<std::pair<kernel::Rational, kernel::Rational>> sample_parameter_pairs(int count,
                                                                                   unsigned seed);

}  // namespace unifexp::checks
