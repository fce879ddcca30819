#include "unifexp/kernel/exact_scalar.hpp"

#include <cmath>
#include <utility>

#include "unifexp/errors.hpp"

namespace unifexp::kernel {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& str) {
    const auto first = str.find_first_not_of(" \t");
    const auto last = str.find_last_not_of(" \t");
    str = first == std::string::npos ? std::string() : str.substr(first, last - first + 1);
  };
  trim(s);
  if (s.empty()) throw UsageError("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto valid_int = [](const std::string& str, bool allow_sign) {
    if (str.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && str[0] == '-') i = 1;
    if (i == str.size()) return false;
    for (; i < str.size(); ++i) {
      if (str[i] < '0' || str[i] > '9') return false;
    }
    return true;
  };
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw UsageError("malformed rational literal '" + std::string(text) + "' (expected p/q)");
  }
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_canonical_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

QuadraticField::QuadraticField(const Rational& g) : g_(g) {
  if (mpz_perfect_square_p(g_.get_num_mpz_t()) && mpz_perfect_square_p(g_.get_den_mpz_t())) {
    mpz_class num;
    mpz_class den;
    mpz_sqrt(num.get_mpz_t(), g_.get_num_mpz_t());
    mpz_sqrt(den.get_mpz_t(), g_.get_den_mpz_t());
    root_ = Rational(num, den);
    root_.canonicalize();
    rational_root_ = true;
  }
}

std::shared_ptr<const QuadraticField> QuadraticField::make(const Rational& g) {
  if (sgn(g) <= 0) throw DomainError("field parameter g = gamma^2 must be positive");
  return std::shared_ptr<const QuadraticField>(new QuadraticField(g));
}

double QuadraticField::gamma() const {
  return rational_root_ ? root_.get_d() : std::sqrt(g_.get_d());
}

bool same_field(const FieldPtr& lhs, const FieldPtr& rhs) {
  return lhs == rhs || (lhs && rhs && *lhs == *rhs);
}

ExactScalar::ExactScalar(FieldPtr field, Rational a, Rational b)
    : field_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {
  if (!field_) throw UsageError("ExactScalar requires a field");
  a_.canonicalize();
  b_.canonicalize();
  canonicalize();
}

void ExactScalar::canonicalize() {
  if (field_->has_rational_root() && sgn(b_) != 0) {
    a_ += b_ * field_->root();
    b_ = 0;
  }
}

void ExactScalar::require_same_field(const ExactScalar& rhs) const {
  if (!same_field(field_, rhs.field_)) {
    throw UsageError("scalars from different fields (g mismatch) cannot be combined");
  }
}

ExactScalar ExactScalar::inverse() const {
  // (a + b gamma)^-1 = (a - b gamma) / (a^2 - b^2 g); the norm vanishes only at 0
  // because canonical scalars have b = 0 whenever g is a square.
  const Rational norm = a_ * a_ - b_ * b_ * field_->g();
  if (sgn(norm) == 0) throw DomainError("inversion of zero in Q(gamma)");
  return ExactScalar(field_, a_ / norm, -b_ / norm);
}

ExactScalar ExactScalar::operator-() const { return ExactScalar(field_, -a_, -b_); }

ExactScalar& ExactScalar::operator+=(const ExactScalar& rhs) {
  require_same_field(rhs);
  a_ += rhs.a_;
  b_ += rhs.b_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& rhs) {
  require_same_field(rhs);
  a_ -= rhs.a_;
  b_ -= rhs.b_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& rhs) {
  require_same_field(rhs);
  Rational a = a_ * rhs.a_ + b_ * rhs.b_ * field_->g();
  Rational b = a_ * rhs.b_ + b_ * rhs.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

ExactScalar& ExactScalar::operator*=(const Rational& rhs) {
  a_ *= rhs;
  b_ *= rhs;
  return *this;
}

bool ExactScalar::operator==(const ExactScalar& rhs) const {
  return same_field(field_, rhs.field_) && a_ == rhs.a_ && b_ == rhs.b_;
}

double ExactScalar::to_double(double gamma) const {
  return sgn(b_) == 0 ? a_.get_d() : a_.get_d() + b_.get_d() * gamma;
}

double ExactScalar::to_double() const { return to_double(field_->gamma()); }

std::string ExactScalar::to_string() const {
  if (sgn(b_) == 0) return a_.get_str();
  if (sgn(a_) == 0) return "(" + b_.get_str() + ")*gamma";
  return "(" + a_.get_str() + " + " + b_.get_str() + "*gamma)";
}

}  // namespace unifexp::kernel
