#include "unifexp/kernel/coeff_expr.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "unifexp/errors.hpp"

namespace unifexp::kernel {

namespace {

double int_pow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

CoeffExpr::CoeffExpr(FieldPtr field, Rational zeta, Variable var)
    : field_(std::move(field)), zeta_(std::move(zeta)), var_(var) {
  if (!field_) throw UsageError("CoeffExpr requires a field");
  zeta_.canonicalize();
}

CoeffExpr CoeffExpr::constant(const FieldPtr& field, const Rational& zeta, const ExactScalar& c,
                              Variable var) {
  return monomial(field, zeta, Monomial{}, c, var);
}

CoeffExpr CoeffExpr::monomial(const FieldPtr& field, const Rational& zeta, Monomial m,
                              const ExactScalar& c, Variable var) {
  CoeffExpr e(field, zeta, var);
  e.add_term(m, c);
  return e;
}

CoeffExpr CoeffExpr::constant_like(const ExactScalar& c) const {
  return monomial_like(Monomial{}, c);
}

CoeffExpr CoeffExpr::constant_like(const Rational& c) const {
  return monomial_like(Monomial{}, scalar(c));
}

CoeffExpr CoeffExpr::monomial_like(Monomial m, const Rational& c) const {
  return monomial_like(m, scalar(c));
}

CoeffExpr CoeffExpr::monomial_like(Monomial m, const ExactScalar& c) const {
  CoeffExpr e = zero_like();
  e.add_term(m, c);
  return e;
}

bool CoeffExpr::is_log_free() const {
  // Monomials are ordered by l first, so the last one has the largest l.
  return terms_.empty() || terms_.rbegin()->first.l == 0;
}

bool CoeffExpr::is_rational_polynomial() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) {
    return kv.first.b == 0 && kv.first.l == 0 && kv.second.is_rational();
  });
}

int CoeffExpr::max_power_a() const {
  int best = 0;
  for (const auto& [m, c] : terms_) best = std::max(best, m.a);
  return best;
}

CoeffExpr CoeffExpr::log_part() const {
  CoeffExpr out = zero_like();
  for (const auto& [m, c] : terms_) {
    if (m.l > 0) out.terms_.emplace(m, c);
  }
  return out;
}

void CoeffExpr::add_term(const Monomial& m, const ExactScalar& c) {
  if (m.a < 0 || m.b < 0 || m.l < 0) throw UsageError("negative monomial exponent");
  if (!same_field(field_, c.field())) throw UsageError("coefficient from a different field");
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void CoeffExpr::require_compatible(const CoeffExpr& rhs) const {
  if (!same_field(field_, rhs.field_) || zeta_ != rhs.zeta_) {
    throw UsageError("expressions with different (g, zeta) parameters cannot be combined");
  }
  if (var_ != rhs.var_) throw UsageError("expressions in different variables cannot be combined");
}

CoeffExpr CoeffExpr::operator-() const {
  CoeffExpr out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

CoeffExpr& CoeffExpr::operator+=(const CoeffExpr& rhs) {
  require_compatible(rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

CoeffExpr& CoeffExpr::operator-=(const CoeffExpr& rhs) {
  require_compatible(rhs);
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

CoeffExpr& CoeffExpr::operator*=(const ExactScalar& c) {
  if (!same_field(field_, c.field())) throw UsageError("scalar from a different field");
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

CoeffExpr& CoeffExpr::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

CoeffExpr operator*(const CoeffExpr& lhs, const CoeffExpr& rhs) {
  lhs.require_compatible(rhs);
  CoeffExpr out = lhs.zero_like();
  for (const auto& [m1, c1] : lhs.terms_) {
    for (const auto& [m2, c2] : rhs.terms_) {
      out.add_term(Monomial{m1.a + m2.a, m1.b + m2.b, m1.l + m2.l}, c1 * c2);
    }
  }
  return out;
}

bool CoeffExpr::operator==(const CoeffExpr& rhs) const {
  return same_field(field_, rhs.field_) && zeta_ == rhs.zeta_ && var_ == rhs.var_ &&
         terms_ == rhs.terms_;
}

CoeffExpr CoeffExpr::scaled_diff() const {
  // D[v^a delta^b L^l] = a v^(a-1) (1 + g v^2) delta^b L^l
  //                    - b gamma v^a delta^(b-1) L^l
  //                    + 2 g l v^(a+1) delta^b L^(l-1)
  CoeffExpr out = zero_like();
  const ExactScalar gamma = ExactScalar::gamma(field_);
  const Rational& g = field_->g();
  for (const auto& [m, c] : terms_) {
    if (m.a > 0) {
      const ExactScalar ca = c * Rational(m.a);
      out.add_term(Monomial{m.a - 1, m.b, m.l}, ca);
      out.add_term(Monomial{m.a + 1, m.b, m.l}, ca * g);
    }
    if (m.b > 0) {
      out.add_term(Monomial{m.a, m.b - 1, m.l}, -(c * gamma) * Rational(m.b));
    }
    if (m.l > 0) {
      out.add_term(Monomial{m.a + 1, m.b, m.l - 1}, c * Rational(2 * m.l * g));
    }
  }
  return out;
}

CoeffExpr CoeffExpr::derivative() const {
  if (!is_rational_polynomial()) {
    throw UsageError("plain derivative is only defined for rational polynomials");
  }
  CoeffExpr out = zero_like();
  for (const auto& [m, c] : terms_) {
    if (m.a > 0) out.add_term(Monomial{m.a - 1, 0, 0}, c * Rational(m.a));
  }
  return out;
}

ExactScalar CoeffExpr::at_one() const {
  if (!is_log_free()) throw UsageError("L(1) = ln(1 + g) is not a field element");
  ExactScalar sum(field_);
  for (const auto& [m, c] : terms_) {
    if (m.b == 0) sum += c;
  }
  return sum;
}

std::map<int, ExactScalar> CoeffExpr::substitute(const Rational& v) const {
  if (!is_log_free()) throw UsageError("exact substitution requires a log-free expression");
  std::map<int, ExactScalar> out;
  for (const auto& [m, c] : terms_) {
    Rational vp = 1;
    for (int i = 0; i < m.a; ++i) vp *= v;
    auto [it, inserted] = out.try_emplace(m.b, field_);
    it->second += c * vp;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

double CoeffExpr::eval(double gamma, double v) const {
  const double g = field_->g().get_d();
  if (!(gamma > 0.0) || std::abs(gamma * gamma - g) > 1e-12 * std::max(1.0, g)) {
    throw UsageError("gamma inconsistent with the expression's field parameter g");
  }
  // arctan(gamma) - arctan(gamma v) without cancellation; lies in (0, pi) for v < 1.
  const double delta = std::atan2(gamma * (1.0 - v), 1.0 + gamma * gamma * v);
  const double log_term = std::log1p(gamma * gamma * v * v);
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    sum += c.to_double(gamma) * int_pow(v, m.a) * int_pow(delta, m.b) * int_pow(log_term, m.l);
  }
  return sum;
}

double CoeffExpr::eval_polynomial(double x) const {
  if (!is_rational_polynomial()) throw UsageError("expression is not a rational polynomial");
  // Horner over the dense coefficient list.
  const int deg = max_power_a();
  std::vector<double> coeffs(static_cast<std::size_t>(deg) + 1, 0.0);
  for (const auto& [m, c] : terms_) coeffs[static_cast<std::size_t>(m.a)] = c.to_double();
  double acc = 0.0;
  for (int i = deg; i >= 0; --i) acc = acc * x + coeffs[static_cast<std::size_t>(i)];
  return acc;
}

std::string CoeffExpr::to_text() const {
  if (terms_.empty()) return "0";
  const char* var = var_ == Variable::v ? "v" : "t";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << "\n  + ";
    first = false;
    os << c.to_string();
    if (m.a > 0) os << " * " << var << (m.a > 1 ? "^" + std::to_string(m.a) : "");
    if (m.b > 0) os << " * delta" << (m.b > 1 ? "^" + std::to_string(m.b) : "");
    if (m.l > 0) os << " * L" << (m.l > 1 ? "^" + std::to_string(m.l) : "");
  }
  return os.str();
}

}  // namespace unifexp::kernel
