#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <mutex>

namespace unifexp::oracle {

using Mp = boost::multiprecision::mpfr_float;

/// Sets the working precision of newly created Mp values for the lifetime of
/// the scope. The default precision is process-wide, so scopes serialize on a
/// shared recursive mutex; nested scopes restore the outer precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  unsigned digits() const { return digits_; }

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned saved_;
  unsigned digits_;
};

// Just enough complex arithmetic for hypergeometric coefficients and digamma.
struct MpComplex {
  Mp re;
  Mp im;

  MpComplex() : re(0), im(0) {}
  MpComplex(const Mp& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  MpComplex(const Mp& r, const Mp& i) : re(r), im(i) {}

  MpComplex& operator+=(const MpComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  MpComplex& operator-=(const MpComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  MpComplex& operator*=(const MpComplex& o) {
    Mp r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  MpComplex& operator/=(const MpComplex& o) {
    Mp d = o.re * o.re + o.im * o.im;
    Mp r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
  }
  friend MpComplex operator+(MpComplex a, const MpComplex& b) { return a += b; }
  friend MpComplex operator-(MpComplex a, const MpComplex& b) { return a -= b; }
  friend MpComplex operator*(MpComplex a, const MpComplex& b) { return a *= b; }
  friend MpComplex operator/(MpComplex a, const MpComplex& b) { return a /= b; }
  MpComplex operator-() const { return MpComplex(-re, -im); }
};

Mp abs(const MpComplex& z);
MpComplex log(const MpComplex& z);
// Principal square root.
MpComplex sqrt(const MpComplex& z);

// Digamma for Re z > 0 (or z off the nonpositive real axis after shifting).
MpComplex digamma(const MpComplex& z);

// 10^-digits at the current precision.
Mp epsilon_digits(unsigned digits);

}  // namespace unifexp::oracle
