#include "unifexp/closed_forms.hpp"

#include <initializer_list>
#include <utility>

#include "unifexp/errors.hpp"

namespace unifexp::closed_forms {

namespace {

using kernel::CoeffExpr;
using kernel::ExactScalar;
using kernel::Monomial;
using kernel::Rational;

class Forms {
 public:
  Forms(const kernel::FieldPtr& field, const Rational& zeta)
      : zero_(field, zeta), g_(field->g()), zeta_(zeta) {
    // X = delta zeta / gamma = delta zeta gamma / g
    x_ = zero_.monomial_like(Monomial{0, 1, 0}, ExactScalar::gamma(field) * Rational(zeta_ / g_));
  }

  // sum_i c_i v^{a_i}
  CoeffExpr poly(std::initializer_list<std::pair<int, Rational>> terms) const {
    CoeffExpr out = zero_.zero_like();
    for (const auto& [a, c] : terms) out += zero_.monomial_like(Monomial{a, 0, 0}, c);
    return out;
  }

  const CoeffExpr& X() const { return x_; }
  const Rational& g() const { return g_; }
  const Rational& zeta() const { return zeta_; }
  CoeffExpr one() const { return zero_.constant_like(Rational(1)); }

  Rational inv_gp1(int power) const {
    Rational r = 1;
    for (int i = 0; i < power; ++i) r /= (g_ + 1);
    return r;
  }

 private:
  CoeffExpr zero_;
  Rational g_;
  Rational zeta_;
  CoeffExpr x_ = zero_;
};

Rational q(long n, long d) { return kernel::frac(n, d); }

// [ (2g+3)/24 + v(g-1)/8 - 5 v^3 g/24 ] / (g+1)
CoeffExpr b1(const Forms& f) {
  const Rational& g = f.g();
  return f.poly({{0, (2 * g + 3) / 24}, {1, (g - 1) / 8}, {3, -5 * g / 24}}) * f.inv_gp1(1);
}

// [ (2g+3)/24 - v(3g+1)/8 + 7 v^3 g/24 ] / (g+1)
CoeffExpr b1_bar(const Forms& f) {
  const Rational& g = f.g();
  return f.poly({{0, (2 * g + 3) / 24}, {1, -(3 * g + 1) / 8}, {3, 7 * g / 24}}) * f.inv_gp1(1);
}

CoeffExpr c2(const Forms& f) {
  const Rational& g = f.g();
  return f.poly({{0, (4 * g * g + 84 * g - 63) / 1152},
                 {1, (g - 1) * (2 * g + 3) / 192},
                 {2, (9 * g * g - 58 * g + 9) / 128},
                 {3, -5 * g * (2 * g + 3) / 576},
                 // the leading g keeps this term homogeneous with its neighbours
                 {4, -77 * g * (g - 1) / 192},
                 {6, 385 * g * g / 1152}});
}

CoeffExpr c2_bar(const Forms& f) {
  const Rational& g = f.g();
  return f.poly({{0, (2 * g - 27) * (2 * g - 3) / 1152},
                 {1, -(3 * g + 1) * (2 * g + 3) / 192},
                 {2, -(15 * g * g - 62 * g + 7) / 128},
                 {3, 7 * g * (2 * g + 3) / 576},
                 // the leading g keeps this term homogeneous with its neighbours
                 {4, g * (99 * g - 79) / 192},
                 {6, -455 * g * g / 1152}});
}

CoeffExpr psi3(const Forms& f) {
  const Rational& g = f.g();
  const Rational& z = f.zeta();
  const Rational g2 = g * g;
  const Rational g3 = g2 * g;
  const CoeffExpr& X = f.X();
  CoeffExpr out = X * X * X * q(1, 6) + X * X * b1(f) * q(1, 2);
  out += X * (c2(f) * f.inv_gp1(2) +
              f.poly({{0, -(2 * g + 1) / (2 * g)}, {2, q(1, 2)}}) * Rational(z * f.inv_gp1(1)));
  out += f.poly({{0, Rational(1)}, {1, Rational(-1)}}) * Rational(z * z / (2 * g * (g + 1)));
  out += f.poly({{0, -(2 * g + 7) / 48},
                 {1, -(3 * g - 11) / 16},
                 {2, (2 * g + 3) / 48},
                 {3, (44 * g - 29) / 48},
                 {5, -35 * g / 48}}) *
         Rational(z * f.inv_gp1(2));
  out += f.poly({{0, -(1112 * g3 + 1116 * g2 - 918 * g + 5265) / 414720},
                 {1, (4 * g3 + 728 * g2 - 4323 * g + 711) / 9216},
                 {2, (2 * g + 3) * (9 * g2 - 58 * g + 9) / 3072},
                 {3, (2005 * g3 - 37671 * g2 + 37566 * g - 2025) / 27648},
                 // the leading g keeps this term homogeneous with its neighbours
                 {4, -77 * g * (g - 1) * (2 * g + 3) / 4608},
                 {5, -13 * g * (1053 * g2 - 3706 * g + 1053) / 15360},
                 {6, 385 * g2 * (2 * g + 3) / 27648},
                 {7, 17017 * g2 * (g - 1) / 9216},
                 {9, -85085 * g3 / 82944}}) *
         f.inv_gp1(3);
  return out;
}

CoeffExpr psi3_bar(const Forms& f) {
  const Rational& g = f.g();
  const Rational& z = f.zeta();
  const Rational g2 = g * g;
  const Rational g3 = g2 * g;
  const CoeffExpr& X = f.X();
  CoeffExpr out = X * X * X * q(1, 6) + X * X * b1_bar(f) * q(1, 2);
  out += X * (c2_bar(f) * f.inv_gp1(2) -
              f.poly({{0, 1 / (2 * g)}, {2, q(1, 2)}}) * Rational(z * f.inv_gp1(1)));
  out += f.poly({{0, Rational(1)}, {1, Rational(-1)}}) * Rational(z * z / (2 * g * (g + 1)));
  out += f.poly({{0, (2 * g - 1) / 48},
                 {1, (3 * g - 7) / 16},
                 {2, -(2 * g + 3) / 48},
                 {3, -(44 * g - 25) / 48},
                 {5, 35 * g / 48}}) *
         Rational(z * f.inv_gp1(2));
  out += f.poly({{0, -(1112 * g3 + 5436 * g2 + 1242 * g - 1215) / 414720},
                 {1, -(12 * g3 + 904 * g2 - 4281 * g + 585) / 9216},
                 {2, -(2 * g + 3) * (15 * g2 - 62 * g + 7) / 3072},
                 {3, -(2807 * g3 - 42897 * g2 + 37458 * g - 1863) / 27648},
                 // the leading g keeps this term homogeneous with its neighbours
                 {4, g * (99 * g - 79) * (2 * g + 3) / 4608},
                 {5, 11 * g * (1521 * g2 - 4762 * g + 1241) / 15360},
                 {6, -455 * g2 * (2 * g + 3) / 27648},
                 {7, -385 * g2 * (51 * g - 47) / 9216},
                 {9, 95095 * g3 / 82944}}) *
         f.inv_gp1(3);
  return out;
}

}  // namespace

kernel::CoeffExpr psi(int k, const kernel::FieldPtr& field, const kernel::Rational& zeta) {
  const Forms f(field, zeta);
  const Rational& z = f.zeta();
  switch (k) {
    case 0:
      return f.one();
    case 1:
      return f.X() + b1(f);
    case 2:
      return f.X() * f.X() * q(1, 2) + f.X() * b1(f) +
             f.poly({{0, Rational(-1)}, {2, Rational(1)}}) * Rational(z * f.inv_gp1(1) / 2) +
             c2(f) * f.inv_gp1(2);
    case 3:
      return psi3(f);
    default:
      throw UsageError("closed forms are transcribed for k = 0..3 only");
  }
}

kernel::CoeffExpr psi_bar(int k, const kernel::FieldPtr& field, const kernel::Rational& zeta) {
  const Forms f(field, zeta);
  const Rational& z = f.zeta();
  switch (k) {
    case 0:
      return f.one();
    case 1:
      return f.X() + b1_bar(f);
    case 2:
      return f.X() * f.X() * q(1, 2) + f.X() * b1_bar(f) +
             f.poly({{0, Rational(1)}, {2, Rational(-1)}}) * Rational(z * f.inv_gp1(1) / 2) +
             c2_bar(f) * f.inv_gp1(2);
    case 3:
      return psi3_bar(f);
    default:
      throw UsageError("closed forms are transcribed for k = 0..3 only");
  }
}

}  // namespace unifexp::closed_forms
