#include <doctest.h>

#include <cmath>
#include <numbers>

#include "unifexp/bessel/uniform.hpp"
#include "unifexp/errors.hpp"
#include "unifexp/oracle/oracle.hpp"

using namespace unifexp;
using namespace unifexp::bessel;
using kernel::frac;
using kernel::Monomial;

namespace {

kernel::CoeffExpr t_poly(std::initializer_list<std::pair<int, long>> terms, long den) {
  kernel::CoeffExpr out = omega(0).zero_like();
  for (const auto& [a, c] : terms) out += out.monomial_like(Monomial{a, 0, 0}, frac(c, den));
  return out;
}

double rel_error(int n, double lambda, int m, Kind kind) {
  const double z = n * lambda;
  const double exact = (kind == Kind::I ? oracle::besselI_reference(n, z) : oracle::besselK_reference(n, z)).value_d();
  return std::abs((exact - eval_bessel({n, lambda, m, kind}).value) / exact);
}

}  // namespace

TEST_CASE("t and eta") {
  CHECK(t_of_lambda(0) == 1.0);
  CHECK(t_of_lambda(1) == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(t_of_lambda(10) < t_of_lambda(2));
  CHECK_THROWS_AS(t_of_lambda(-1), DomainError);
  CHECK(eta(1) == doctest::Approx(0.5328399754).epsilon(1e-10));
  CHECK(eta(10) == doctest::Approx(std::sqrt(101.0) + std::log(10 / (1 + std::sqrt(101.0)))).epsilon(1e-15));
  CHECK(eta(1e4) - 1e4 == doctest::Approx(0).epsilon(1e-3));
  CHECK_THROWS_AS(eta(0), DomainError);
}

TEST_CASE("Debye polynomials") {
  CHECK(omega(0) == t_poly({{0, 1}}, 1));
  CHECK(omega(1) == t_poly({{1, 3}, {3, -5}}, 24));
  CHECK(omega(2) == t_poly({{2, 81}, {4, -462}, {6, 385}}, 1152));
  CHECK(omega(3) == t_poly({{3, 30375}, {5, -369603}, {7, 765765}, {9, -425425}}, 414720));
  CHECK(omega(1).eval_polynomial(1.0) == doctest::Approx(-1.0 / 12));
  CHECK(omega_bar(0) == t_poly({{0, 1}}, 1));
  CHECK(omega_bar(1) == t_poly({{1, -9}, {3, 7}}, 24));
  CHECK(omega_bar(1).eval_polynomial(1.0) == doctest::Approx(-1.0 / 12));
  CHECK_THROWS_AS(omega(kMaxOrder + 1), UsageError);
}

TEST_CASE("degree 3k and parity") {
  for (int k = 0; k <= kMaxOrder; ++k) {
    CHECK(omega(k).max_power_a() == 3 * k);
    for (const auto& [m, c] : omega(k).terms()) CHECK((m.a - k) % 2 == 0);
  }
}

TEST_CASE("prefactors of I and K multiply to t/(2n)") {
  for (int n : {1, 4, 30}) {
    for (double lambda : {0.3, 2.0, 11.0}) {
      const auto I = eval_bessel({n, lambda, 0, Kind::I});
      const auto K = eval_bessel({n, lambda, 0, Kind::K});
      CHECK(std::exp(I.log_prefactor + K.log_prefactor) == doctest::Approx(I.t / (2 * n)).epsilon(1e-13));
    }
  }
}

TEST_CASE("value equals prefactor times the sum of the terms") {
  const auto e = eval_bessel({4, 2.0, 3, Kind::I});
  REQUIRE(e.terms.size() == 4);
  double sum = 0;
  for (double t : e.terms) sum += t;
  CHECK(e.value == doctest::Approx(std::exp(e.log_prefactor) * sum).epsilon(1e-14));
  CHECK(e.terms[1] == doctest::Approx(omega(1).eval_polynomial(e.t) / 4).epsilon(1e-14));
}

TEST_CASE("n = 4, lambda = 2 against the oracle") {
  double previous_i = INFINITY, previous_k = INFINITY;
  for (int m : {0, 1, 3}) {
    const double ei = rel_error(4, 2.0, m, Kind::I), ek = rel_error(4, 2.0, m, Kind::K);
    CHECK(ei < previous_i);
    CHECK(ek < previous_k);
    previous_i = ei;
    previous_k = ek;
  }
  CHECK(previous_i < 1e-4);
}

TEST_CASE("derivatives against the oracle") {
  const auto ref_i = oracle::besselI_reference(8, 16.0);
  const auto ref_k = oracle::besselK_reference(8, 16.0);
  CHECK(eval_bessel({8, 2.0, 4, Kind::dI}).value == doctest::Approx(ref_i.derivative_d()).epsilon(1e-6));
  CHECK(eval_bessel({8, 2.0, 4, Kind::dK}).value == doctest::Approx(ref_k.derivative_d()).epsilon(1e-6));
}

TEST_CASE("Wronskian residual decreases with n") {
  double previous = INFINITY;
  for (int n : {4, 8, 16, 32}) {
    const double lambda = 2.0;
    const auto I = eval_bessel({n, lambda, 3, Kind::I});
    const auto K = eval_bessel({n, lambda, 3, Kind::K});
    const auto dI = eval_bessel({n, lambda, 3, Kind::dI});
    const auto dK = eval_bessel({n, lambda, 3, Kind::dK});
    const double r = std::abs(n * lambda * (dI.value * K.value - dK.value * I.value) - 1);
    CHECK(r < previous);
    previous = r;
  }
}

TEST_CASE("order improvement at n 8 and lambda 2") {
  // Stated as strictly decreasing in m for m = 0..3. The classical series is
  // not monotone here (u_2 and u_3 partly cancel), so this case fails.
  for (auto kind : {Kind::I, Kind::K}) {
    double previous = INFINITY;
    for (int m = 0; m <= 3; ++m) {
      const double e = rel_error(8, 2.0, m, kind);
      INFO(kind_name(kind) << " m=" << m << " err=" << e);
      CHECK(e < previous);
      previous = e;
    }
  }
}

TEST_CASE("error ratio under doubling n") {
  const double ratio = rel_error(8, 2.0, 3, Kind::I) / rel_error(16, 2.0, 3, Kind::I);
  CHECK(ratio >= 8);
  CHECK(ratio <= 32);
}

TEST_CASE("overflow switches to the logarithmic result") {
  const auto e = eval_bessel({400, 5.0, 3, Kind::I});
  CHECK(e.overflow);
  CHECK(e.log_abs == doctest::Approx(e.log_prefactor + std::log(e.terms[0] + e.terms[1] + e.terms[2] + e.terms[3])));
  CHECK_FALSE(eval_bessel({4, 2.0, 3, Kind::K}).overflow);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(eval_bessel({0, 1.0, 3, Kind::I}), DomainError);
  CHECK_THROWS_AS(eval_bessel({4, -1.0, 3, Kind::I}), DomainError);
  CHECK_THROWS_AS(eval_bessel({4, 1.0, 7, Kind::I}), UsageError);
  CHECK(parse_kind("dK") == Kind::dK);
  CHECK_THROWS_AS(parse_kind("J"), UsageError);
}
