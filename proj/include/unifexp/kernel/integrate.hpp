#pragma once

#include <map>

#include "unifexp/kernel/coeff_expr.hpp"

namespace unifexp::kernel {

/// Antiderivative of  P(v) + R(v) / (1 + g v^2)  for log-free P, R.
///
/// Rules: integration by parts lowers the delta power of v^a delta^b;
/// v^a / (1 + g v^2) is reduced by polynomial division down to a in {0, 1};
///   int delta^b / (1 + g v^2) dv = -delta^(b+1) / (gamma (b+1)),
///   int v / (1 + g v^2) dv      = L / (2 g).
/// The integrals  int v delta^b / (1 + g v^2) dv  with b >= 1 have no
/// antiderivative in the basis; their total coefficients are returned in
/// `unresolved` instead of being dropped.
struct Antiderivative {
  CoeffExpr closed;
  std::map<int, ExactScalar> unresolved;  // b -> coefficient, b >= 1

  bool fully_closed() const { return unresolved.empty(); }
};

Antiderivative antiderivative(const CoeffExpr& polynomial_part, const CoeffExpr& rational_part);

/// One step of the Legendre recurrence with the endpoint condition psi(1) = 0:
///
///   psi_{k+1} = (1 - v^2)(1 + g v^2) / (2 (1 + g)) * dpsi_k/dv
///             - 1 / (8 (1 + g)) * int_1^v [ (5 g v'^2 + 1 - g)
///                                         + 8 zeta (1 + g) / (1 + g v'^2) ] psi_k dv'
struct LegendreStep {
  CoeffExpr next;
  // Logarithmic terms that failed to cancel (L monomials of the antiderivative, and
  // delta^b L / (2g) boundary terms for unresolved integrals). Zero on success.
  CoeffExpr surviving_logs;
};

// Never throws on log survival; the caller inspects surviving_logs.
LegendreStep integrate_step_legendre_checked(const CoeffExpr& psi_k);

// Throws IntegrityError if any logarithmic term survives.
CoeffExpr integrate_step_legendre(const CoeffExpr& psi_k);

/// Debye recurrence in t:
///   omega_{k+1} = t^2 (1 - t^2) / 2 * domega_k/dt + 1/8 int_0^t (1 - 5 s^2) omega_k(s) ds
CoeffExpr integrate_step_bessel(const CoeffExpr& omega_k);

}  // namespace unifexp::kernel
