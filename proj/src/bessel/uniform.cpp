#include "unifexp/bessel/uniform.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "unifexp/errors.hpp"
#include "unifexp/kernel/integrate.hpp"

namespace unifexp::bessel {

using kernel::CoeffExpr;
using kernel::Monomial;
using kernel::Rational;

namespace {

struct Tables {
  std::vector<CoeffExpr> omega;
  std::vector<CoeffExpr> omega_bar;
};

const Tables& tables() {
  static const Tables built = [] {
    const auto field = kernel::QuadraticField::make(Rational(1));
    Tables t;
    t.omega.push_back(CoeffExpr::constant(field, 0, kernel::ExactScalar(field, 1), kernel::Variable::t));
    for (int k = 1; k <= kMaxOrder; ++k) {
      t.omega.push_back(kernel::integrate_step_bessel(t.omega.back()));
    }
    const CoeffExpr& one = t.omega[0];
    // t(t^2 - 1)/2 and t^2(t^2 - 1)
    const CoeffExpr a = one.monomial_like(Monomial{3, 0, 0}, kernel::frac(1, 2)) +
                        one.monomial_like(Monomial{1, 0, 0}, kernel::frac(-1, 2));
    const CoeffExpr b = one.monomial_like(Monomial{4, 0, 0}, Rational(1)) +
                        one.monomial_like(Monomial{2, 0, 0}, Rational(-1));
    t.omega_bar.push_back(one);
    for (int k = 1; k <= kMaxOrder; ++k) {
      t.omega_bar.push_back(t.omega[k] + a * t.omega[k - 1] + b * t.omega[k - 1].derivative());
    }
    return t;
  }();
  return built;
}

void check_order(int k) {
  if (k < 0 || k > kMaxOrder) {
    throw UsageError("order " + std::to_string(k) + " exceeds K_max = " + std::to_string(kMaxOrder));
  }
}

}  // namespace

Kind parse_kind(std::string_view text) {
  if (text == "I") return Kind::I;
  if (text == "K") return Kind::K;
  if (text == "dI") return Kind::dI;
  if (text == "dK") return Kind::dK;
  throw UsageError("unknown Bessel kind '" + std::string(text) + "'");
}

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::I: return "I";
    case Kind::K: return "K";
    case Kind::dI: return "dI";
    case Kind::dK: return "dK";
  }
  return "?";
}

double t_of_lambda(double lambda) {
  if (!(lambda >= 0)) throw DomainError("lambda must be nonnegative");
  return 1.0 / std::hypot(1.0, lambda);
}

double eta(double lambda) {
  if (!(lambda > 0)) throw DomainError("eta needs lambda > 0");
  const double root = std::hypot(1.0, lambda);
  return root + std::log(lambda / (1.0 + root));
}

const CoeffExpr& omega(int k) {
  check_order(k);
  return tables().omega[k];
}

const CoeffExpr& omega_bar(int k) {
  check_order(k);
  return tables().omega_bar[k];
}

BesselEval eval_bessel(const BesselParams& params) {
  if (params.n < 1) throw DomainError("order n must be a positive integer");
  if (!(params.lambda > 0)) throw DomainError("lambda must be positive");
  check_order(params.order);

  const double n = params.n;
  BesselEval out;
  out.t = t_of_lambda(params.lambda);
  out.eta = eta(params.lambda);

  const bool growing = params.kind == Kind::I || params.kind == Kind::dI;
  const bool derivative = params.kind == Kind::dI || params.kind == Kind::dK;
  const double step = growing ? 1.0 / n : -1.0 / n;

  double weight = 1.0;
  double sum = 0.0;
  for (int k = 0; k <= params.order; ++k) {
    const CoeffExpr& c = derivative ? omega_bar(k) : omega(k);
    out.terms.push_back(weight * c.eval_polynomial(out.t));
    sum += out.terms.back();
    weight *= step;
  }

  const double log_t = std::log(out.t);
  const double log_2pi_n = std::log(2 * std::numbers::pi * n);
  const double log_pi_2n = std::log(std::numbers::pi / (2 * n));
  const double log_lambda = std::log(params.lambda);
  switch (params.kind) {
    case Kind::I:
      out.log_prefactor = 0.5 * (log_t - log_2pi_n) + n * out.eta;
      break;
    case Kind::K:
      out.log_prefactor = 0.5 * (log_pi_2n + log_t) - n * out.eta;
      break;
    case Kind::dI:
      out.log_prefactor = -0.5 * (log_2pi_n + log_t) - log_lambda + n * out.eta;
      break;
    case Kind::dK:
      out.log_prefactor = 0.5 * (log_pi_2n - log_t) - log_lambda - n * out.eta;
      out.prefactor_sign = -1;
      break;
  }

  out.sign = out.prefactor_sign * (sum < 0 ? -1 : 1);
  out.log_abs = out.log_prefactor + std::log(std::abs(sum));
  out.value = out.prefactor_sign * std::exp(out.log_prefactor) * sum;
  out.overflow = !std::isfinite(out.value) || (out.value == 0.0 && sum != 0.0);
  return out;
}

}  // namespace unifexp::bessel
