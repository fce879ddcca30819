#pragma once

#include <vector>

#include "unifexp/oracle/mp.hpp"

namespace unifexp::oracle {

struct OracleConfig {
  unsigned digits = 60;         // working precision in decimal digits, >= 30
  double series_tol = 1e-40;    // relative truncation tolerance of every series
  long max_terms = 2'000'000;   // per-series budget
  double ode_tol = 1e-40;       // Taylor-step truncation tolerance
  bool cross_validate = true;   // build q twice and compare

  // Defaults, with digits overridden by UNIFEXP_ORACLE_DIGITS when set.
  static OracleConfig from_env();
  void validate() const;
  // Digits actually used internally (working precision plus guard digits).
  unsigned working_digits() const { return digits + 20; }
};

/// High-precision value with first and second derivatives in the function's own argument.
struct OracleValue {
  Mp value;
  Mp derivative;
  Mp second;
  double err_estimate = 0.0;  // relative
  double imag_residue = 0.0;  // |Im| of a complex-arithmetic route, relative

  double value_d() const { return value.convert_to<double>(); }
  double derivative_d() const { return derivative.convert_to<double>(); }
};

// (1/n!) ((1-x)/(1+x))^{n/2} F(-mu, mu+1; n+1; (1-x)/2), derivatives in x.
OracleValue p_reference(int n, double gamma, double xi, double x, const OracleConfig& cfg = {});

// Second solution, normalised by (1-x^2)(p q' - p' q) = 1 and
// q ~ ((n-1)!/2) ((1-x)/2)^{-n/2} at x -> 1. Built from the logarithmic
// series about x = 1; with cfg.cross_validate it is rebuilt by ODE integration
// and both must agree to 1e-25 (IntegrityError otherwise).
OracleValue q_reference(int n, double gamma, double xi, double x, const OracleConfig& cfg = {});

// The logarithmic-series construction alone.
OracleValue q_reference_series(int n, double gamma, double xi, double x, const OracleConfig& cfg = {});
// Taylor integration of the Legendre equation from x = 0, started from
//   q(0) = -1/(2 p'(0)),  q'(0) = 1/(2 p(0)),
// which follow from q(x) being a multiple of p(-x) with unit Wronskian.
OracleValue q_reference_ode(int n, double gamma, double xi, double x, const OracleConfig& cfg = {});

// I_n(z) by its ascending series; derivatives in z.
OracleValue besselI_reference(int n, double z, const OracleConfig& cfg = {});
// K_n(z) = int_0^inf exp(-z cosh s) cosh(n s) ds by the trapezoid rule with step halving.
OracleValue besselK_reference(int n, double z, const OracleConfig& cfg = {});

// Relative residual of (1-x^2) y'' - 2x y' - (n^2 gamma^2 + n^2/(1-x^2) + 2 xi) y.
double legendre_ode_residual(int n, double gamma, double xi, double x, const OracleValue& y);
// Relative residual of z^2 y'' + z y' - (z^2 + n^2) y.
double bessel_ode_residual(int n, double z, const OracleValue& y);
// (1-x^2)(p q' - p' q) - 1
double legendre_wronskian_residual(double x, const OracleValue& p, const OracleValue& q);

struct LimitRow {
  double theta = 0.0;
  double p_scaled = 0.0;    // |mu|^n p(cos theta)
  double bessel_i = 0.0;    // I_n(n lambda)
  double gap_p = 0.0;       // |p_scaled / I - 1|
  double q_scaled = 0.0;    // |mu|^{-n} q(cos theta)
  double bessel_k = 0.0;    // K_n(n lambda)
  double gap_q = 0.0;       // |q_scaled / K - 1|
};

// Small-angle comparison with the Bessel functions along a theta sweep,
// gamma = lambda / sin(theta).
std::vector<LimitRow> limit_check_bessel(int n, double lambda, double xi,
                                         const std::vector<double>& thetas,
                                         const OracleConfig& cfg = {});

}  // namespace unifexp::oracle
