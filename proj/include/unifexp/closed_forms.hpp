#pragma once

#include "unifexp/kernel/coeff_expr.hpp"

// Hand-transcribed closed forms of the first Legendre expansion coefficients,
// written term by term in
//   delta = arctan(gamma) - arctan(gamma v),  zeta = xi - 1/8.
// Golden data only: nothing here goes through the recurrence.
namespace unifexp::closed_forms {

// psi_k for k = 0..3.
kernel::CoeffExpr psi(int k, const kernel::FieldPtr& field, const kernel::Rational& zeta);

// Derivative coefficients psi-bar_k for k = 0..3.
kernel::CoeffExpr psi_bar(int k, const kernel::FieldPtr& field, const kernel::Rational& zeta);

}  // namespace unifexp::closed_forms
