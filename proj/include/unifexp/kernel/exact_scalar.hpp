#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <string_view>

namespace unifexp::kernel {

using Rational = mpq_class;

// Canonical num/den.
inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p/q", "p" or "-p/q" into a canonical rational. Throws UsageError.
Rational parse_rational(std::string_view text);

// Canonical "p/q" rendering; integers carry an explicit "/1".
std::string to_canonical_string(const Rational& q);

/// The field Q(gamma) with gamma = sqrt(g), g a positive rational.
///
/// When g is the square of a rational the extension collapses to Q; the
/// field records the rational root so that scalars can fold their gamma
/// component and stay canonical.
class QuadraticField {
 public:
  // g <= 0 is rejected with DomainError.
  static std::shared_ptr<const QuadraticField> make(const Rational& g);

  const Rational& g() const { return g_; }
  bool has_rational_root() const { return rational_root_; }
  const Rational& root() const { return root_; }
  double gamma() const;

  bool operator==(const QuadraticField& other) const { return g_ == other.g_; }

 private:
  explicit QuadraticField(const Rational& g);

  Rational g_;
  bool rational_root_ = false;
  Rational root_;
};

using FieldPtr = std::shared_ptr<const QuadraticField>;

bool same_field(const FieldPtr& lhs, const FieldPtr& rhs);

/// Element a + b*gamma of Q(gamma), gamma^2 = g.
class ExactScalar {
 public:
  explicit ExactScalar(FieldPtr field, Rational a = 0, Rational b = 0);

  static ExactScalar gamma(FieldPtr field) { return ExactScalar(std::move(field), 0, 1); }

  const FieldPtr& field() const { return field_; }
  const Rational& rational_part() const { return a_; }
  const Rational& gamma_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  // Requires x != 0 (DomainError).
  ExactScalar inverse() const;

  ExactScalar operator-() const;
  ExactScalar& operator+=(const ExactScalar& rhs);
  ExactScalar& operator-=(const ExactScalar& rhs);
  ExactScalar& operator*=(const ExactScalar& rhs);
  ExactScalar& operator*=(const Rational& rhs);
  ExactScalar& operator/=(const ExactScalar& rhs) { return *this *= rhs.inverse(); }

  friend ExactScalar operator+(ExactScalar lhs, const ExactScalar& rhs) { return lhs += rhs; }
  friend ExactScalar operator-(ExactScalar lhs, const ExactScalar& rhs) { return lhs -= rhs; }
  friend ExactScalar operator*(ExactScalar lhs, const ExactScalar& rhs) { return lhs *= rhs; }
  friend ExactScalar operator*(ExactScalar lhs, const Rational& rhs) { return lhs *= rhs; }
  friend ExactScalar operator*(const Rational& lhs, ExactScalar rhs) { return rhs *= lhs; }
  friend ExactScalar operator/(ExactScalar lhs, const ExactScalar& rhs) { return lhs /= rhs; }

  bool operator==(const ExactScalar& rhs) const;

  // a + b*gamma with gamma supplied by the caller (already validated against g).
  double to_double(double gamma) const;
  double to_double() const;

  std::string to_string() const;

 private:
  void canonicalize();
  void require_same_field(const ExactScalar& rhs) const;

  FieldPtr field_;
  Rational a_;
  Rational b_;
};

}  // namespace unifexp::kernel
