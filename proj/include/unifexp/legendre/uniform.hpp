#pragma once

#include <complex>
#include <memory>
#include <string_view>
#include <vector>

#include "unifexp/kernel/coeff_expr.hpp"

namespace unifexp::legendre {

inline constexpr int kMaxOrder = 6;
// Below this gamma the 1/gamma^2 parts of psi_k cancel badly in double evaluation.
inline constexpr double kSmallGamma = 0.05;

enum class Kind { p, q, dp, dq };

Kind parse_kind(std::string_view text);
std::string_view kind_name(Kind kind);

// v = x / sqrt(1 + gamma^2 (1 - x^2))
double v_of_x(double x, double gamma);

// -1/2 + sqrt(1 - 8 xi - 4 n^2 gamma^2)/2, principal root.
std::complex<double> mu_of(int n, double gamma, double xi);

// 1/2 ln[(1 - v)/((1 + v)(1 + gamma^2))] - gamma [arctan(gamma v) - arctan(gamma)]
double S_minus1(double v, double gamma);

/// psi_k, psi-bar_k and their Stirling-shifted forms for one (g, zeta), k = 0..size-1.
struct CoefficientSet {
  kernel::FieldPtr field;
  kernel::Rational zeta;
  std::vector<kernel::CoeffExpr> psi;
  std::vector<kernel::CoeffExpr> psi_bar;
  std::vector<kernel::CoeffExpr> psi_plus;
  std::vector<kernel::CoeffExpr> psi_bar_plus;

  int size() const { return static_cast<int>(psi.size()); }
};

// Cached by (g, zeta); holds at least orders 0..kmax. Integrity errors propagate.
std::shared_ptr<const CoefficientSet> coefficients(const kernel::Rational& g,
                                                   const kernel::Rational& zeta, int kmax);

kernel::CoeffExpr psi(int k, const kernel::Rational& g, const kernel::Rational& zeta);
kernel::CoeffExpr psi_bar(int k, const kernel::Rational& g, const kernel::Rational& zeta);
kernel::CoeffExpr psi_plus(int k, const kernel::Rational& g, const kernel::Rational& zeta);
kernel::CoeffExpr psi_bar_plus(int k, const kernel::Rational& g, const kernel::Rational& zeta);

// Exact g = gamma^2 and zeta = xi - 1/8 for double inputs (both are dyadic rationals).
kernel::Rational exact_g(double gamma);
kernel::Rational exact_zeta(double xi);

struct LegendreParams {
  int n = 1;
  double gamma = 1.0;
  double xi = 0.0;
  double x = 0.0;
  int order = 3;
  Kind kind = Kind::p;
};

struct LegendreEval {
  double value = 0.0;
  double log_abs = 0.0;
  int sign = 1;
  bool overflow = false;
  double log_prefactor = 0.0;
  int prefactor_sign = 1;
  // Per-order contributions; value = prefactor * sum(terms).
  std::vector<double> terms;
  int order = 0;
  double v = 0.0;
  double S = 0.0;
  std::complex<double> mu;
  bool small_gamma = false;
};

// p, q and (1/n) d/dx of each, truncated after k = order.
LegendreEval eval_legendre(const LegendreParams& params);

/// Angle form: x = cos(theta), gamma = lambda / sin(theta).
struct ConeAngleParams {
  int n = 1;
  double lambda = 1.0;
  double theta = 0.1;
  double xi = 0.0;
  int order = 3;
  Kind kind = Kind::p;

  double x() const;
  double gamma() const;
};

LegendreParams to_legendre_params(const ConeAngleParams& params);

// ln(lambda/(sqrt(1+lambda^2) + cos theta))
//   - (lambda/sin theta)[arctan(sin theta/lambda) - arctan(tan theta/(lambda t))] + 1
double eta_tilde(double lambda, double theta);
// The same quantity arranged as S_{-1}(v, gamma) + 1 - ln(sin theta/lambda).
double eta_tilde_via_phase(double lambda, double theta);

// Bessel-like arrangement with t, eta-tilde, psi^+ and the (sin theta/(lambda n))^{+-n} factor.
LegendreEval eval_bessel_form(const ConeAngleParams& params);

struct CrossRelation {
  int k = 0;
  double gamma = 0.0;
  double psi_at_zero = 0.0;
  double omega_at_one = 0.0;
  double magnitude_gap = 0.0;  // |psi_k(0)| - |omega_k(1)|
  int observed_sign = 1;       // sign(psi_k(0)) * sign(omega_k(1)); 0 if either vanishes
};

// Large-gamma comparison of psi_k(0) with the Debye value omega_k(1).
CrossRelation cross_relation_check(int k, double gamma_large, double xi = 0.0);

}  // namespace unifexp::legendre
