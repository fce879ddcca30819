#include "unifexp/legendre/uniform.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "unifexp/bessel/uniform.hpp"
#include "unifexp/errors.hpp"
#include "unifexp/kernel/bernoulli.hpp"
#include "unifexp/kernel/integrate.hpp"

namespace unifexp::legendre {

using kernel::CoeffExpr;
using kernel::Monomial;
using kernel::Rational;

namespace {

void check_order(int k) {
  if (k < 0 || k > kMaxOrder) {
    throw UsageError("order " + std::to_string(k) + " exceeds K_max = " + std::to_string(kMaxOrder));
  }
}

// psi-bar_k from psi_k, psi_{k-1}.
CoeffExpr make_bar(const CoeffExpr& current, const CoeffExpr* previous) {
  if (previous == nullptr) return current;
  const Rational& g = current.field()->g();
  const CoeffExpr v1mv2 = current.monomial_like(Monomial{1, 0, 0}, Rational(1)) +
                          current.monomial_like(Monomial{3, 0, 0}, Rational(-1));
  const CoeffExpr one_mv2 = current.constant_like(Rational(1)) +
                            current.monomial_like(Monomial{2, 0, 0}, Rational(-1));
  return current - v1mv2 * *previous * Rational(g / (2 * (1 + g))) -
         one_mv2 * previous->scaled_diff() * Rational(1 / (1 + g));
}

// sum_i e_i c_{k-i}
CoeffExpr stirling_shift(const std::vector<CoeffExpr>& c, const std::vector<Rational>& e, int k) {
  CoeffExpr out = c[0].zero_like();
  for (int i = 0; i <= k; ++i) out += c[k - i] * e[i];
  return out;
}

void extend(CoefficientSet& set, int kmax) {
  const auto e = kernel::stirling_exp_coefficients(kmax);
  if (set.psi.empty()) {
    set.psi.push_back(CoeffExpr::constant(set.field, set.zeta, kernel::ExactScalar(set.field, 1)));
  }
  while (set.size() <= kmax) set.psi.push_back(kernel::integrate_step_legendre(set.psi.back()));
  for (int k = static_cast<int>(set.psi_bar.size()); k <= kmax; ++k) {
    set.psi_bar.push_back(make_bar(set.psi[k], k > 0 ? &set.psi[k - 1] : nullptr));
  }
  for (int k = static_cast<int>(set.psi_plus.size()); k <= kmax; ++k) {
    set.psi_plus.push_back(stirling_shift(set.psi, e, k));
    set.psi_bar_plus.push_back(stirling_shift(set.psi_bar, e, k));
  }
}

struct Cache {
  std::mutex mutex;
  std::map<std::pair<Rational, Rational>, std::shared_ptr<const CoefficientSet>> sets;
};

Cache& cache() {
  static Cache c;
  return c;
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

}  // namespace

Kind parse_kind(std::string_view text) {
  if (text == "p") return Kind::p;
  if (text == "q") return Kind::q;
  if (text == "dp") return Kind::dp;
  if (text == "dq") return Kind::dq;
  throw UsageError("unknown Legendre kind '" + std::string(text) + "'");
}

std::string_view kind_name(Kind kind) {
  switch (kind) {
    case Kind::p: return "p";
    case Kind::q: return "q";
    case Kind::dp: return "dp";
    case Kind::dq: return "dq";
  }
  return "?";
}

double v_of_x(double x, double gamma) {
  if (!(std::abs(x) < 1.0)) throw DomainError("|x| must be below 1");
  if (!(gamma > 0)) throw DomainError("gamma must be positive");
  return x / std::sqrt(1.0 + gamma * gamma * (1.0 - x) * (1.0 + x));
}

std::complex<double> mu_of(int n, double gamma, double xi) {
  const double disc = 1.0 - 8.0 * xi - 4.0 * double(n) * n * gamma * gamma;
  return -0.5 + 0.5 * std::sqrt(std::complex<double>(disc, 0.0));
}

double S_minus1(double v, double gamma) {
  if (!(std::abs(v) < 1.0)) throw DomainError("|v| must be below 1");
  if (!(gamma > 0)) throw DomainError("gamma must be positive");
  const double delta = std::atan2(gamma * (1.0 - v), 1.0 + gamma * gamma * v);
  return 0.5 * (std::log1p(-v) - std::log1p(v) - std::log1p(gamma * gamma)) + gamma * delta;
}

std::shared_ptr<const CoefficientSet> coefficients(const Rational& g, const Rational& zeta,
                                                   int kmax) {
  check_order(kmax);
  auto& c = cache();
  std::lock_guard lock(c.mutex);
  auto key = std::make_pair(g, zeta);
  auto it = c.sets.find(key);
  if (it != c.sets.end() && it->second->size() > kmax) return it->second;
  auto fresh = it != c.sets.end() ? std::make_shared<CoefficientSet>(*it->second)
                                  : std::make_shared<CoefficientSet>(
                                        CoefficientSet{kernel::QuadraticField::make(g), zeta, {}, {}, {}, {}});
  extend(*fresh, kmax);
  c.sets[key] = fresh;
  return fresh;
}

CoeffExpr psi(int k, const Rational& g, const Rational& zeta) {
  return coefficients(g, zeta, k)->psi[k];
}

CoeffExpr psi_bar(int k, const Rational& g, const Rational& zeta) {
  return coefficients(g, zeta, k)->psi_bar[k];
}

CoeffExpr psi_plus(int k, const Rational& g, const Rational& zeta) {
  return coefficients(g, zeta, k)->psi_plus[k];
}

CoeffExpr psi_bar_plus(int k, const Rational& g, const Rational& zeta) {
  return coefficients(g, zeta, k)->psi_bar_plus[k];
}

Rational exact_g(double gamma) {
  if (!(gamma > 0) || !std::isfinite(gamma)) throw DomainError("gamma must be positive and finite");
  Rational r(gamma);
  return r * r;
}

Rational exact_zeta(double xi) {
  if (!std::isfinite(xi)) throw DomainError("xi must be finite");
  Rational r(xi);
  return r - kernel::frac(1, 8);
}

namespace {

struct Assembled {
  double log_prefactor;
  int prefactor_sign;
  std::vector<double> terms;
};

LegendreEval finish(Assembled a, int order, double v, double S, std::complex<double> mu) {
  LegendreEval out;
  double sum = 0.0;
  for (double t : a.terms) sum += t;
  out.terms = std::move(a.terms);
  out.log_prefactor = a.log_prefactor;
  out.prefactor_sign = a.prefactor_sign;
  out.sign = a.prefactor_sign * (sum < 0 ? -1 : 1);
  out.log_abs = a.log_prefactor + std::log(std::abs(sum));
  out.value = a.prefactor_sign * std::exp(a.log_prefactor) * sum;
  out.overflow = !std::isfinite(out.value) || (out.value == 0.0 && sum != 0.0);
  out.order = order;
  out.v = v;
  out.S = S;
  out.mu = mu;
  return out;
}

void validate(int n, double gamma, int order) {
  if (n < 1) throw DomainError("order n must be a positive integer");
  if (!(gamma > 0)) throw DomainError("gamma must be positive");
  check_order(order);
}

}  // namespace

LegendreEval eval_legendre(const LegendreParams& params) {
  validate(params.n, params.gamma, params.order);
  const double x = params.x;
  const double gamma = params.gamma;
  const double g = gamma * gamma;
  const double v = v_of_x(x, gamma);
  const double S = S_minus1(v, gamma);
  const double n = params.n;

  const auto set = coefficients(exact_g(gamma), exact_zeta(params.xi), params.order);
  const bool is_p = params.kind == Kind::p || params.kind == Kind::dp;
  const bool derivative = params.kind == Kind::dp || params.kind == Kind::dq;
  const auto& coeffs = derivative ? set->psi_bar : set->psi;

  Assembled a{0.0, 1, {}};
  const double step = is_p ? 1.0 / n : -1.0 / n;
  double weight = 1.0;
  for (int k = 0; k <= params.order; ++k) {
    a.terms.push_back(weight * coeffs[k].eval(gamma, v));
    weight *= step;
  }

  // ln[(1 + g v^2)/(1 + g)] and ln[(1 + g)/(1 - v^2)] with 1 - v^2 formed from 1 - x^2.
  const double one_mx2 = (1.0 - x) * (1.0 + x);
  const double s2 = 1.0 + g * one_mx2;
  const double log_ratio = std::log1p(g * v * v) - std::log1p(g);
  const double log_metric = std::log(s2) - std::log(one_mx2);
  const double log_norm = is_p ? -log_factorial(params.n) : log_factorial(params.n - 1) - std::log(2.0);
  const double exponent = is_p ? n * S : -n * S;
  a.log_prefactor = log_norm + exponent + (derivative ? 0.75 * log_ratio + log_metric : 0.25 * log_ratio);
  a.prefactor_sign = params.kind == Kind::dp ? -1 : 1;
  LegendreEval out = finish(std::move(a), params.order, v, S, mu_of(params.n, gamma, params.xi));
  out.small_gamma = gamma < kSmallGamma;
  return out;
}

double ConeAngleParams::x() const { return std::cos(theta); }
double ConeAngleParams::gamma() const { return lambda / std::sin(theta); }

LegendreParams to_legendre_params(const ConeAngleParams& p) {
  return LegendreParams{p.n, p.gamma(), p.xi, p.x(), p.order, p.kind};
}

namespace {

void check_angle(double lambda, double theta) {
  if (!(lambda > 0)) throw DomainError("lambda must be positive");
  if (!(theta > 0 && theta < std::numbers::pi / 2)) throw DomainError("theta must lie in (0, pi/2)");
}

}  // namespace

double eta_tilde(double lambda, double theta) {
  check_angle(lambda, theta);
  const double t = bessel::t_of_lambda(lambda);
  const double root = std::hypot(1.0, lambda);
  return std::log(lambda / (root + std::cos(theta))) -
         (lambda / std::sin(theta)) *
             (std::atan(std::sin(theta) / lambda) - std::atan(std::tan(theta) / (lambda * t))) +
         1.0;
}

double eta_tilde_via_phase(double lambda, double theta) {
  check_angle(lambda, theta);
  const double gamma = lambda / std::sin(theta);
  const double v = bessel::t_of_lambda(lambda) * std::cos(theta);
  return S_minus1(v, gamma) + 1.0 - std::log(std::sin(theta) / lambda);
}

LegendreEval eval_bessel_form(const ConeAngleParams& params) {
  check_angle(params.lambda, params.theta);
  const double gamma = params.gamma();
  validate(params.n, gamma, params.order);
  const double n = params.n;
  const double t = bessel::t_of_lambda(params.lambda);
  const double v = t * std::cos(params.theta);
  const double et = eta_tilde(params.lambda, params.theta);

  const auto set = coefficients(exact_g(gamma), exact_zeta(params.xi), params.order);
  const bool is_p = params.kind == Kind::p || params.kind == Kind::dp;
  const bool derivative = params.kind == Kind::dp || params.kind == Kind::dq;
  const auto& coeffs = derivative ? set->psi_bar_plus : set->psi_plus;

  Assembled a{0.0, 1, {}};
  const double step = is_p ? 1.0 / n : -1.0 / n;
  double weight = 1.0;
  for (int k = 0; k <= params.order; ++k) {
    a.terms.push_back(weight * coeffs[k].eval(gamma, v));
    weight *= step;
  }

  const double log_scale = std::log(std::sin(params.theta) / (params.lambda * n));
  const double log_sin2 = 2.0 * std::log(std::sin(params.theta));
  const double two_pi_n = 2.0 * std::numbers::pi * n;
  switch (params.kind) {
    case Kind::p:
      a.log_prefactor = 0.5 * std::log(t / two_pi_n) + n * et + n * log_scale;
      break;
    case Kind::q:
      a.log_prefactor = 0.5 * std::log(std::numbers::pi * t / (2 * n)) - n * et - n * log_scale;
      break;
    case Kind::dp:
      a.log_prefactor = -0.5 * std::log(two_pi_n * t) + n * et + n * log_scale - log_sin2;
      a.prefactor_sign = -1;
      break;
    case Kind::dq:
      a.log_prefactor =
          0.5 * std::log(std::numbers::pi / (2 * n * t)) - n * et - n * log_scale - log_sin2;
      break;
  }
  return finish(std::move(a), params.order, v, S_minus1(v, gamma), mu_of(params.n, gamma, params.xi));
}

CrossRelation cross_relation_check(int k, double gamma_large, double xi) {
  if (!(gamma_large >= 100)) throw DomainError("cross-relation study needs gamma >= 100");
  CrossRelation out;
  out.k = k;
  out.gamma = gamma_large;
  out.psi_at_zero = psi(k, exact_g(gamma_large), exact_zeta(xi)).eval(gamma_large, 0.0);
  out.omega_at_one = bessel::omega(k).eval_polynomial(1.0);
  out.magnitude_gap = std::abs(out.psi_at_zero) - std::abs(out.omega_at_one);
  const auto sgn = [](double z) { return z > 0 ? 1 : (z < 0 ? -1 : 0); };
  out.observed_sign = sgn(out.psi_at_zero) * sgn(out.omega_at_one);
  return out;
}

}  // namespace unifexp::legendre
