#include "unifexp/kernel/integrate.hpp"

#include <utility>

#include "unifexp/errors.hpp"

namespace unifexp::kernel {

namespace {

void accumulate(Antiderivative& acc, const Antiderivative& x, const ExactScalar& c) {
  if (c.is_zero()) return;
  acc.closed += x.closed * c;
  for (const auto& [b, coeff] : x.unresolved) {
    auto [it, inserted] = acc.unresolved.try_emplace(b, c.field());
    it->second += coeff * c;
    if (it->second.is_zero()) acc.unresolved.erase(it);
  }
}

// Memoized rule set for one (g, zeta) pair.
class RuleSet {
 public:
  explicit RuleSet(const CoeffExpr& like)
      : like_(like.zero_like()), gamma_(ExactScalar::gamma(like.field())) {}

  // int v^a delta^b dv
  const Antiderivative& poly(int a, int b) {
    const auto key = std::make_pair(a, b);
    if (auto it = poly_.find(key); it != poly_.end()) return it->second;
    // v^(a+1) delta^b / (a+1) + b gamma / (a+1) * int v^(a+1) delta^(b-1) / (1 + g v^2)
    Antiderivative out{like_.monomial_like(Monomial{a + 1, b, 0}, frac(1, a + 1)), {}};
    if (b > 0) {
      accumulate(out, over(a + 1, b - 1), gamma_ * frac(b, a + 1));
    }
    return poly_.emplace(key, std::move(out)).first->second;
  }

  // int v^a delta^b / (1 + g v^2) dv
  const Antiderivative& over(int a, int b) {
    const auto key = std::make_pair(a, b);
    if (auto it = over_.find(key); it != over_.end()) return it->second;
    Antiderivative out{like_.zero_like(), {}};
    const Rational& g = like_.field()->g();
    if (a >= 2) {
      // v^a / (1 + g v^2) = v^(a-2) / g - v^(a-2) / (g (1 + g v^2))
      const ExactScalar inv_g = like_.scalar(1 / g);
      accumulate(out, poly(a - 2, b), inv_g);
      accumulate(out, over(a - 2, b), -inv_g);
    } else if (a == 0) {
      // -delta^(b+1) / (gamma (b+1)),  1/gamma = gamma / g
      out.closed.add_term(Monomial{0, b + 1, 0}, gamma_ * Rational(-1 / (g * (b + 1))));
    } else if (b == 0) {
      out.closed.add_term(Monomial{0, 0, 1}, like_.scalar(1 / (2 * g)));
    } else {
      out.unresolved.emplace(b, like_.scalar(1));
    }
    return over_.emplace(key, std::move(out)).first->second;
  }

 private:
  CoeffExpr like_;
  ExactScalar gamma_;
  std::map<std::pair<int, int>, Antiderivative> poly_;
  std::map<std::pair<int, int>, Antiderivative> over_;
};

}  // namespace

Antiderivative antiderivative(const CoeffExpr& polynomial_part, const CoeffExpr& rational_part) {
  if (!polynomial_part.is_log_free() || !rational_part.is_log_free()) {
    throw UsageError("antiderivative requires log-free integrands");
  }
  if (!(polynomial_part.zero_like() == rational_part.zero_like())) {
    throw UsageError("integrand parts carry different parameters");
  }
  RuleSet rules(polynomial_part);
  Antiderivative out{polynomial_part.zero_like(), {}};
  for (const auto& [m, c] : polynomial_part.terms()) accumulate(out, rules.poly(m.a, m.b), c);
  for (const auto& [m, c] : rational_part.terms()) accumulate(out, rules.over(m.a, m.b), c);
  return out;
}

LegendreStep integrate_step_legendre_checked(const CoeffExpr& psi_k) {
  if (psi_k.variable() != Variable::v) throw UsageError("Legendre recurrence acts on v");
  if (!psi_k.is_log_free()) throw UsageError("Legendre recurrence input must be log-free");
  const Rational& g = psi_k.field()->g();
  const Rational& zeta = psi_k.zeta();
  const Rational one_plus_g = 1 + g;

  const CoeffExpr one_minus_v2 =
      psi_k.constant_like(Rational(1)) + psi_k.monomial_like(Monomial{2, 0, 0}, Rational(-1));
  const CoeffExpr derivative_part =
      one_minus_v2 * psi_k.scaled_diff() * Rational(1 / (2 * one_plus_g));

  const CoeffExpr weight = psi_k.monomial_like(Monomial{2, 0, 0}, Rational(5 * g)) +
                           psi_k.constant_like(Rational(1 - g));
  const CoeffExpr polynomial_part = weight * psi_k;
  const CoeffExpr rational_part = psi_k * Rational(8 * zeta * one_plus_g);

  Antiderivative anti = antiderivative(polynomial_part, rational_part);

  LegendreStep step{psi_k.zero_like(), anti.closed.log_part()};
  for (const auto& [b, c] : anti.unresolved) {
    // Boundary term of int v delta^b/(1+gv^2) by parts: delta^b L / (2g).
    step.surviving_logs.add_term(Monomial{0, b, 1}, c * Rational(1 / (2 * g)));
  }

  CoeffExpr log_free = anti.closed.zero_like();
  for (const auto& [m, c] : anti.closed.terms()) {
    if (m.l == 0) log_free.add_term(m, c);
  }
  CoeffExpr definite = log_free - log_free.constant_like(log_free.at_one());
  step.next = derivative_part - definite * Rational(1 / (8 * one_plus_g));
  return step;
}

CoeffExpr integrate_step_legendre(const CoeffExpr& psi_k) {
  LegendreStep step = integrate_step_legendre_checked(psi_k);
  if (!step.surviving_logs.is_zero()) {
    throw IntegrityError("logarithmic terms survived the Legendre integration step:\n  " +
                         step.surviving_logs.to_text());
  }
  return std::move(step.next);
}

CoeffExpr integrate_step_bessel(const CoeffExpr& omega_k) {
  if (omega_k.variable() != Variable::t) throw UsageError("Bessel recurrence acts on t");
  if (!omega_k.is_rational_polynomial()) {
    throw UsageError("Bessel recurrence input must be a rational polynomial in t");
  }
  const CoeffExpr t2_one_minus_t2 = omega_k.monomial_like(Monomial{2, 0, 0}, frac(1, 2)) +
                                    omega_k.monomial_like(Monomial{4, 0, 0}, frac(-1, 2));
  CoeffExpr next = t2_one_minus_t2 * omega_k.derivative();
  const CoeffExpr integrand =
      (omega_k.constant_like(Rational(1)) + omega_k.monomial_like(Monomial{2, 0, 0}, Rational(-5))) *
      omega_k;
  // Antiderivative vanishing at t = 0.
  for (const auto& [m, c] : integrand.terms()) {
    next.add_term(Monomial{m.a + 1, 0, 0}, c * frac(1, 8 * (m.a + 1)));
  }
  return next;
}

}  // namespace unifexp::kernel
