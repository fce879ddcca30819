#pragma once

#include <vector>

#include "unifexp/kernel/exact_scalar.hpp"

namespace unifexp::kernel {

// B_0 .. B_count-1 (B_1 = -1/2), exact.
std::vector<Rational> bernoulli_numbers(int count);

// Coefficients e_0 .. e_kmax of exp(-sum_{j>=1} B_2j / (2j (2j-1)) n^{-(2j-1)})
// as a power series in 1/n. These convert 1/n! into its Stirling form:
//   1/n! = e^n n^{-n} (2 pi n)^{-1/2} * sum_k e_k n^{-k}.
std::vector<Rational> stirling_exp_coefficients(int kmax);

}  // namespace unifexp::kernel
