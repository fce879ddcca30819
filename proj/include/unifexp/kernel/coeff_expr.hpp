#pragma once

#include <compare>
#include <map>
#include <string>
#include <tuple>

#include "unifexp/kernel/exact_scalar.hpp"

namespace unifexp::kernel {

// Exponents of v^a * delta^b * L^l, where
//   delta = arctan(gamma) - arctan(gamma v),  L = ln(1 + gamma^2 v^2).
// Ordered lexicographically in (l, b, a).
struct Monomial {
  int a = 0;
  int b = 0;
  int l = 0;

  friend auto operator<=>(const Monomial& x, const Monomial& y) {
    return std::tie(x.l, x.b, x.a) <=> std::tie(y.l, y.b, y.a);
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Name of the free variable; only affects rendering and which recurrences accept it.
enum class Variable { v, t };

/// Finite sum of monomials c * v^a delta^b L^l with coefficients in Q(gamma).
///
/// Canonical: zero coefficients are never stored, so equality is map equality.
/// Every expression also carries zeta = xi - 1/8, the second rational
/// parameter of the Legendre recurrence; Bessel polynomials use zeta = 0.
class CoeffExpr {
 public:
  using TermMap = std::map<Monomial, ExactScalar>;

  CoeffExpr(FieldPtr field, Rational zeta, Variable var = Variable::v);

  static CoeffExpr constant(const FieldPtr& field, const Rational& zeta, const ExactScalar& c,
                            Variable var = Variable::v);
  static CoeffExpr monomial(const FieldPtr& field, const Rational& zeta, Monomial m,
                            const ExactScalar& c, Variable var = Variable::v);
  // Zero expression sharing this expression's parameters.
  CoeffExpr zero_like() const { return CoeffExpr(field_, zeta_, var_); }
  CoeffExpr constant_like(const ExactScalar& c) const;
  CoeffExpr constant_like(const Rational& c) const;
  CoeffExpr monomial_like(Monomial m, const Rational& c) const;
  CoeffExpr monomial_like(Monomial m, const ExactScalar& c) const;

  const FieldPtr& field() const { return field_; }
  const Rational& zeta() const { return zeta_; }
  Variable variable() const { return var_; }
  const TermMap& terms() const { return terms_; }

  ExactScalar scalar(const Rational& a, const Rational& b = 0) const {
    return ExactScalar(field_, a, b);
  }

  bool is_zero() const { return terms_.empty(); }
  // No monomial carries an L factor.
  bool is_log_free() const;
  // Pure polynomial in the variable with rational coefficients (b = l = 0).
  bool is_rational_polynomial() const;
  int max_power_a() const;
  // Sub-expression made of the monomials with l >= 1.
  CoeffExpr log_part() const;

  void add_term(const Monomial& m, const ExactScalar& c);

  CoeffExpr operator-() const;
  CoeffExpr& operator+=(const CoeffExpr& rhs);
  CoeffExpr& operator-=(const CoeffExpr& rhs);
  CoeffExpr& operator*=(const ExactScalar& c);
  CoeffExpr& operator*=(const Rational& c);

  friend CoeffExpr operator+(CoeffExpr lhs, const CoeffExpr& rhs) { return lhs += rhs; }
  friend CoeffExpr operator-(CoeffExpr lhs, const CoeffExpr& rhs) { return lhs -= rhs; }
  friend CoeffExpr operator*(const CoeffExpr& lhs, const CoeffExpr& rhs);
  friend CoeffExpr operator*(CoeffExpr lhs, const ExactScalar& c) { return lhs *= c; }
  friend CoeffExpr operator*(const ExactScalar& c, CoeffExpr rhs) { return rhs *= c; }
  friend CoeffExpr operator*(CoeffExpr lhs, const Rational& c) { return lhs *= c; }
  friend CoeffExpr operator*(const Rational& c, CoeffExpr rhs) { return rhs *= c; }

  bool operator==(const CoeffExpr& rhs) const;

  // D[E] = (1 + g v^2) dE/dv; maps the basis into itself.
  CoeffExpr scaled_diff() const;
  // Plain d/dvar; only defined for rational polynomials (Bessel family).
  CoeffExpr derivative() const;

  // Exact value at v = 1 (delta = 0). Throws UsageError if an L factor is present,
  // since L(1) = ln(1 + g) leaves the field.
  ExactScalar at_one() const;
  // Exact substitution of a rational v, leaving delta symbolic: returns the
  // coefficients of the resulting polynomial in delta. Requires a log-free expression.
  std::map<int, ExactScalar> substitute(const Rational& v) const;

  // Floating evaluation. gamma must satisfy |gamma^2 - g| <= 1e-12 max(1, g).
  double eval(double gamma, double v) const;
  // Evaluation of a rational polynomial at x (Bessel family, variable t).
  double eval_polynomial(double x) const;

  std::string to_text() const;

 private:
  void require_compatible(const CoeffExpr& rhs) const;

  FieldPtr field_;
  Rational zeta_;
  Variable var_;
  TermMap terms_;
};

}  // namespace unifexp::kernel
