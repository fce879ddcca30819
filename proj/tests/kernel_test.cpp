#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "unifexp/checks.hpp"
#include "unifexp/errors.hpp"
#include "unifexp/kernel/bernoulli.hpp"
#include "unifexp/kernel/coeff_expr.hpp"
#include "unifexp/kernel/integrate.hpp"
#include "unifexp/kernel/serialize.hpp"
#include "unifexp/kernel/spectral.hpp"
#include "unifexp/legendre/uniform.hpp"

using namespace unifexp;
using namespace unifexp::kernel;

namespace {

FieldPtr field_of(long num, long den = 1) { return QuadraticField::make(frac(num, den)); }

CoeffExpr v_poly(const FieldPtr& f, std::initializer_list<std::pair<int, long>> terms, long den = 1) {
  CoeffExpr out(f, frac(-1, 8));
  for (const auto& [a, c] : terms) out += out.monomial_like(Monomial{a, 0, 0}, frac(c, den));
  return out;
}

}  // namespace

TEST_SUITE("exact scalar") {
  TEST_CASE("conjugate product and inverse of gamma") {
    const auto f = field_of(2);
    const ExactScalar x(f, 1, 1), y(f, 1, -1);
    CHECK(x * y == ExactScalar(f, -1));
    const auto g = ExactScalar::gamma(f);
    CHECK(g.inverse() == ExactScalar(f, 0, frac(1, 2)));
    CHECK(ExactScalar(f, frac(1, 2)) + ExactScalar(f, frac(1, 3)) == ExactScalar(f, frac(5, 6)));
  }

  TEST_CASE("perfect squares fold gamma into the rational part") {
    const auto f = field_of(9, 4);
    CHECK(f->has_rational_root());
    CHECK(ExactScalar::gamma(f) == ExactScalar(f, frac(3, 2)));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(ExactScalar(field_of(2)).inverse(), DomainError);
    CHECK_THROWS_AS(QuadraticField::make(Rational(0)), DomainError);
    CHECK_THROWS_AS(ExactScalar(field_of(2), 1) + ExactScalar(field_of(3), 1), UsageError);
  }

  TEST_CASE("field axioms on 1000 random triples") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
      const auto f = QuadraticField::make(checks::random_positive_rational(rng));
      const ExactScalar x(f, checks::random_rational(rng), checks::random_rational(rng));
      const ExactScalar y(f, checks::random_rational(rng), checks::random_rational(rng));
      const ExactScalar z(f, checks::random_rational(rng), checks::random_rational(rng));
      REQUIRE(x + y == y + x);
      REQUIRE(x * y == y * x);
      REQUIRE((x + y) + z == x + (y + z));
      REQUIRE((x * y) * z == x * (y * z));
      REQUIRE(x * (y + z) == x * y + x * z);
      if (!x.is_zero()) REQUIRE(x * x.inverse() == ExactScalar(f, 1));
    }
  }

  TEST_CASE("rational parsing") {
    CHECK(parse_rational("-1/8") == frac(-1, 8));
    CHECK(parse_rational("6/4") == frac(3, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_canonical_string(Rational(7)) == "7/1");
    CHECK_THROWS_AS(parse_rational("1/0"), UsageError);
    CHECK_THROWS_AS(parse_rational("abc"), UsageError);
  }
}

TEST_SUITE("coefficient expressions") {
  TEST_CASE("products and cancellation") {
    const auto f = field_of(3);
    const CoeffExpr one = v_poly(f, {{0, 1}});
    const CoeffExpr v = v_poly(f, {{1, 1}});
    const CoeffExpr delta = one.monomial_like(Monomial{0, 1, 0}, Rational(1));
    CHECK(v * delta == one.monomial_like(Monomial{1, 1, 0}, Rational(1)));
    CHECK((one + v) * (one - v) == v_poly(f, {{0, 1}, {2, -1}}));
    CHECK((v + (-v)).is_zero());
  }

  TEST_CASE("scaled derivative") {
    const auto f = field_of(3);
    const CoeffExpr one = v_poly(f, {{0, 1}});
    const CoeffExpr v = v_poly(f, {{1, 1}});
    const CoeffExpr delta = one.monomial_like(Monomial{0, 1, 0}, Rational(1));
    const auto gamma = ExactScalar::gamma(f);
    CHECK(v.scaled_diff() == v_poly(f, {{0, 1}, {2, 3}}));
    CHECK(delta.scaled_diff() == one.constant_like(-gamma));
    CHECK((v * delta).scaled_diff() == v_poly(f, {{0, 1}, {2, 3}}) * delta - v * gamma);
    const CoeffExpr L = one.monomial_like(Monomial{0, 0, 1}, Rational(1));
    CHECK(L.scaled_diff() == v_poly(f, {{1, 6}}));
  }

  TEST_CASE("parameter mismatch is a usage error") {
    const CoeffExpr a = v_poly(field_of(2), {{1, 1}});
    const CoeffExpr b = v_poly(field_of(3), {{1, 1}});
    CHECK_THROWS_AS(a + b, UsageError);
    CHECK_THROWS_AS(a.eval(1.0, 0.5), UsageError);
  }

  TEST_CASE("evaluation") {
    const auto psi1 = legendre::psi(1, Rational(1), frac(-1, 8));
    CHECK(psi1.eval(1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(psi1.eval(1.0, 0.0) == doctest::Approx(5.0 / 48 - std::numbers::pi / 32).epsilon(1e-14));
    CHECK(v_poly(field_of(5), {{0, 1}}).eval(std::sqrt(5.0), 0.3) == 1.0);
  }
}

TEST_SUITE("integration rules") {
  TEST_CASE("finite-difference check of every closed antiderivative") {
    for (const auto& [num, den] : {std::pair{9L, 4L}, std::pair{2L, 1L}, std::pair{1L, 5L}}) {
      const auto f = field_of(num, den);
      const double gamma = f->gamma();
      const CoeffExpr zero(f, frac(-1, 8));
      int closed = 0;
      for (int a = 0; a <= 4; ++a) {
        for (int b = 0; b <= 3; ++b) {
          for (int over = 0; over <= 1; ++over) {
            const CoeffExpr m = zero.monomial_like(Monomial{a, b, 0}, Rational(1));
            const auto anti = over ? antiderivative(zero, m) : antiderivative(m, zero);
            if (!anti.fully_closed()) continue;
            ++closed;
            std::vector<double> f_vals, fd_vals;
            double scale = 0;
            const double h = 1e-5;
            for (int i = 0; i < 20; ++i) {
              const double v = -0.95 + 1.9 * (i + 0.5) / 20;
              double fv = m.eval(gamma, v);
              if (over) fv /= 1 + gamma * gamma * v * v;
              f_vals.push_back(fv);
              fd_vals.push_back((anti.closed.eval(gamma, v + h) - anti.closed.eval(gamma, v - h)) / (2 * h));
              scale = std::max(scale, std::abs(fv));
            }
            for (int i = 0; i < 20; ++i) {
              INFO("a=" << a << " b=" << b << " over=" << over);
              CHECK(std::abs(f_vals[i] - fd_vals[i]) <= 1e-8 * scale);
            }
          }
        }
      }
      CHECK(closed >= 20);
    }
  }

  TEST_CASE("unresolved integrals are reported") {
    const auto f = field_of(2);
    const CoeffExpr zero(f, frac(-1, 8));
    const auto anti = antiderivative(zero, zero.monomial_like(Monomial{1, 1, 0}, Rational(1)));
    REQUIRE(anti.unresolved.size() == 1);
    CHECK(anti.unresolved.begin()->first == 1);
    CHECK_THROWS_AS(antiderivative(zero.monomial_like(Monomial{0, 0, 1}, Rational(1)), zero), UsageError);
  }

  TEST_CASE("Bessel step rejects non-polynomials") {
    const CoeffExpr delta = CoeffExpr::monomial(field_of(1), Rational(0), Monomial{0, 1, 0},
                                                ExactScalar(field_of(1), 1), Variable::t);
    CHECK_THROWS_AS(integrate_step_bessel(delta), UsageError);
  }

  TEST_CASE("first Legendre step from psi_0 = 1") {
    const auto f = field_of(1);
    const CoeffExpr psi0 = CoeffExpr::constant(f, frac(-1, 8), ExactScalar(f, 1));
    const CoeffExpr psi1 = integrate_step_legendre(psi0);
    // zeta delta / gamma + (5/24 - 5 v^3/24)/2 at g = 1
    CoeffExpr expected = psi0.monomial_like(Monomial{0, 1, 0}, frac(-1, 8)) +
                         psi0.constant_like(frac(5, 48)) + psi0.monomial_like(Monomial{3, 0, 0}, frac(-5, 48));
    CHECK(psi1 == expected);
    CHECK(psi1.at_one().is_zero());
  }

  TEST_CASE("log cancellation up to k = 6") {
    for (const auto& [g, zeta] : checks::sample_parameter_pairs(5, 31)) {
      const auto f = QuadraticField::make(g);
      CoeffExpr psi = CoeffExpr::constant(f, zeta, ExactScalar(f, 1));
      for (int k = 1; k <= 6; ++k) {
        const auto step = integrate_step_legendre_checked(psi);
        REQUIRE(step.surviving_logs.is_zero());
        REQUIRE(step.next.is_log_free());
        psi = step.next;
      }
    }
  }
}

TEST_SUITE("serialization") {
  TEST_CASE("round trip of psi_3") {
    const auto psi3 = legendre::psi(3, frac(7, 3), frac(2, 5));
    const auto doc = to_json(psi3);
    CHECK(doc["g"] == "7/3");
    CHECK(doc["zeta"] == "2/5");
    CHECK(coeff_expr_from_json(doc) == psi3);
    CHECK(coeff_expr_from_json(nlohmann::ordered_json::parse(doc.dump())) == psi3);
  }

  TEST_CASE("malformed documents") {
    CHECK_THROWS_AS(coeff_expr_from_json(nlohmann::ordered_json::parse(R"({"g": "1/1"})")), UsageError);
    CHECK_THROWS_AS(coeff_expr_from_json(nlohmann::ordered_json::parse(
                        R"({"g": "1/1", "zeta": "0/1", "terms": [{"a": -1, "b": 0, "l": 0, "coeff": {"a": "1/1", "b": "0/1"}}]})")),
                    UsageError);
  }
}

TEST_SUITE("bernoulli") {
  TEST_CASE("numbers and Stirling coefficients") {
    const auto b = bernoulli_numbers(13);
    CHECK(b[0] == 1);
    CHECK(b[1] == frac(-1, 2));
    CHECK(b[2] == frac(1, 6));
    CHECK(b[12] == frac(-691, 2730));
    const auto e = stirling_exp_coefficients(3);
    CHECK(e[0] == 1);
    CHECK(e[1] == frac(-1, 12));
    CHECK(e[2] == frac(1, 288));
    CHECK(e[3] == frac(139, 51840));
  }
}

TEST_SUITE("spectral mode") {
  TEST_CASE("first steps match the symbolic kernel") {
    const auto unit = spectral_unit(Family::legendre, 1.0, 0.0, 64);
    const auto psi1 = spectral_step(unit);
    const auto exact = legendre::psi(1, Rational(1), frac(-1, 8));
    for (int j = 0; j < psi1.size(); ++j) {
      const double v = static_cast<double>(psi1.node(j));
      CHECK(psi1.eval(v) == doctest::Approx(exact.eval(1.0, v)).epsilon(1e-13));
    }
    CHECK(psi1.samples().front() == 0);

    const auto omega1 = spectral_step(spectral_unit(Family::bessel, 1.0, 0.0, 32));
    for (double t : {0.0, 0.2, 0.5, 0.9, 1.0}) {
      CHECK(omega1.eval(t) == doctest::Approx((3 * t - 5 * t * t * t) / 24).epsilon(1e-14));
    }
  }

  TEST_CASE("node lookup returns stored samples") {
    const auto psi1 = spectral_step(spectral_unit(Family::legendre, 2.0, 0.125, 40));
    for (int j = 0; j < psi1.size(); ++j) {
      CHECK(psi1.eval(static_cast<double>(psi1.node(j))) == static_cast<double>(psi1.samples()[j]));
    }
  }

  TEST_CASE("agreement over three settings") {
    const std::tuple<double, double, Rational, Rational> settings[] = {
        {1.0, 0.0, Rational(1), Rational(0)},
        {2.0, 0.125, Rational(4), frac(1, 8)},
        {0.5, -1.0, frac(1, 4), Rational(-1)}};
    for (const auto& [gamma, xi, g, xi_exact] : settings) {
      const auto chain = spectral_chain(Family::legendre, gamma, xi, 3);
      for (int k = 0; k <= 3; ++k) {
        const auto sym = legendre::psi(k, g, xi_exact - frac(1, 8));
        for (int i = 0; i <= 32; ++i) {
          const double v = kDefaultVLo + (1 - kDefaultVLo) * i / 32;
          CHECK(std::abs(sym.eval(gamma, v) - chain[k].eval(v)) <= 1e-12);
        }
      }
    }
  }

  TEST_CASE("coarse grids are rejected") {
    auto unit = spectral_unit(Family::legendre, 8.0, 0.0, 32);
    auto s1 = spectral_step(unit, 1.0);
    auto s2 = spectral_step(s1, 1.0);
    CHECK_THROWS_AS(spectral_step(s2, 1e-13), ResolutionError);
    CHECK_THROWS_AS(spectral_unit(Family::legendre, 1.0, 0.0, 16), UsageError);
  }
}
