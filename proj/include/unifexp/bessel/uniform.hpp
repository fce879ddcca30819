#pragma once

#include <string_view>
#include <vector>

#include "unifexp/kernel/coeff_expr.hpp"

namespace unifexp::bessel {

inline constexpr int kMaxOrder = 6;

enum class Kind { I, K, dI, dK };

Kind parse_kind(std::string_view text);
std::string_view kind_name(Kind kind);

// t = 1/sqrt(1 + lambda^2)
double t_of_lambda(double lambda);
// sqrt(1 + lambda^2) + ln(lambda/(1 + sqrt(1 + lambda^2)))
double eta(double lambda);

// Debye polynomials in t, exact; built once for k = 0..kMaxOrder.
const kernel::CoeffExpr& omega(int k);
// omega_k + t(t^2 - 1)/2 omega_{k-1} + t^2 (t^2 - 1) omega'_{k-1}
const kernel::CoeffExpr& omega_bar(int k);

struct BesselParams {
  int n = 1;
  double lambda = 1.0;
  int order = 3;
  Kind kind = Kind::I;
};

struct BesselEval {
  double value = 0.0;
  // ln|value| and its sign, kept separately so that e^{n eta} cannot overflow them.
  double log_abs = 0.0;
  int sign = 1;
  // value is not representable as a double; use log_abs and sign.
  bool overflow = false;
  double log_prefactor = 0.0;
  int prefactor_sign = 1;
  // n^{-k} omega_k(t) (or (-n)^{-k}, omega-bar_k); value = prefactor * sum(terms).
  std::vector<double> terms;
  double t = 0.0;
  double eta = 0.0;
};

// I_n(n lambda), K_n(n lambda), and for dI/dK the z-derivatives at z = n lambda
// (equivalently (1/n) d/dlambda), truncated after k = order.
BesselEval eval_bessel(const BesselParams& params);

}  // namespace unifexp::bessel
