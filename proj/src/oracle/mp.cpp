#include "unifexp/oracle/mp.hpp"

#include <vector>

#include "unifexp/errors.hpp"
#include "unifexp/kernel/bernoulli.hpp"

namespace unifexp::oracle {

namespace {

std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}

}  // namespace

PrecisionScope::PrecisionScope(unsigned digits10)
    : lock_(precision_mutex()), saved_(Mp::default_precision()), digits_(digits10) {
  Mp::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Mp::default_precision(saved_); }

Mp abs(const MpComplex& z) { return boost::multiprecision::hypot(z.re, z.im); }

MpComplex log(const MpComplex& z) {
  return MpComplex(boost::multiprecision::log(abs(z)), boost::multiprecision::atan2(z.im, z.re));
}

MpComplex sqrt(const MpComplex& z) {
  if (z.im == 0) {
    if (z.re >= 0) return MpComplex(boost::multiprecision::sqrt(z.re), Mp(0));
    return MpComplex(Mp(0), boost::multiprecision::sqrt(-z.re));
  }
  const Mp r = abs(z);
  Mp re = boost::multiprecision::sqrt((r + z.re) / 2);
  Mp im = boost::multiprecision::sqrt((r - z.re) / 2);
  if (z.im < 0) im = -im;
  return MpComplex(re, im);
}

Mp epsilon_digits(unsigned digits) { return boost::multiprecision::pow(Mp(10), -static_cast<int>(digits)); }

MpComplex digamma(const MpComplex& z_in) {
  if (z_in.im == 0 && z_in.re <= 0 && boost::multiprecision::floor(z_in.re) == z_in.re) {
    throw DomainError("digamma pole at a nonpositive integer");
  }
  const unsigned digits = Mp::default_precision();
  const Mp threshold(digits + 10);
  MpComplex z = z_in;
  MpComplex shift;
  // psi(z) = psi(z + 1) - 1/z
  while (abs(z) < threshold || z.re < 1) {
    shift -= MpComplex(Mp(1)) / z;
    z += MpComplex(Mp(1));
  }
  // psi(z) ~ ln z - 1/(2z) - sum_k B_2k / (2k z^2k)
  static const std::vector<kernel::Rational> bernoulli = kernel::bernoulli_numbers(402);
  const Mp eps = epsilon_digits(digits + 5);
  MpComplex out = log(z) - MpComplex(Mp(1)) / (MpComplex(Mp(2)) * z);
  const MpComplex inv_z2 = MpComplex(Mp(1)) / (z * z);
  MpComplex power = inv_z2;
  bool converged = false;
  for (int k = 1; 2 * k < static_cast<int>(bernoulli.size()); ++k) {
    const auto& b = bernoulli[2 * k];
    const Mp coeff = Mp(b.get_num().get_str()) / Mp(b.get_den().get_str()) / (2 * k);
    const MpComplex term = power * MpComplex(coeff);
    out -= term;
    if (abs(term) < eps * abs(out)) {
      converged = true;
      break;
    }
    power *= inv_z2;
  }
  if (!converged) throw PrecisionError("digamma asymptotic series did not converge");
  return out + shift;
}

}  // namespace unifexp::oracle
