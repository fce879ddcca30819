#include "unifexp/kernel/bernoulli.hpp"

#include "unifexp/errors.hpp"

namespace unifexp::kernel {

std::vector<Rational> bernoulli_numbers(int count) {
  if (count < 0) throw UsageError("negative Bernoulli count");
  std::vector<Rational> b(static_cast<std::size_t>(count));
  if (count == 0) return b;
  b[0] = 1;
  // B_m = -1/(m+1) sum_{j<m} C(m+1, j) B_j
  for (int m = 1; m < count; ++m) {
    mpz_class binom = 1;  // C(m+1, 0)
    Rational acc = 0;
    for (int j = 0; j < m; ++j) {
      acc += Rational(binom) * b[static_cast<std::size_t>(j)];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    b[static_cast<std::size_t>(m)] = -acc / (m + 1);
    b[static_cast<std::size_t>(m)].canonicalize();
  }
  return b;
}

std::vector<Rational> stirling_exp_coefficients(int kmax) {
  if (kmax < 0) throw UsageError("negative Stirling order");
  const auto bern = bernoulli_numbers(kmax + 2);
  // s_i: coefficient of n^{-i} in the exponent.
  std::vector<Rational> s(static_cast<std::size_t>(kmax) + 1, Rational(0));
  for (int j = 1; 2 * j - 1 <= kmax; ++j) {
    s[static_cast<std::size_t>(2 * j - 1)] =
        -bern[static_cast<std::size_t>(2 * j)] / Rational(2 * j * (2 * j - 1));
  }
  // exp of a power series: k e_k = sum_{i=1}^k i s_i e_{k-i}
  std::vector<Rational> e(static_cast<std::size_t>(kmax) + 1, Rational(0));
  e[0] = 1;
  for (int k = 1; k <= kmax; ++k) {
    Rational acc = 0;
    for (int i = 1; i <= k; ++i) {
      acc += Rational(i) * s[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(k - i)];
    }
    e[static_cast<std::size_t>(k)] = acc / k;
    e[static_cast<std::size_t>(k)].canonicalize();
  }
  return e;
}

}  // namespace unifexp::kernel
