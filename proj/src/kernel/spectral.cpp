#include "unifexp/kernel/spectral.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "unifexp/errors.hpp"

namespace unifexp::kernel {

namespace {

using Real = SpectralReal;

Real pi() { return boost::math::constants::pi<Real>(); }

// cos(pi m/(N-1)) for m = 0..2(N-1)-1; indices are reduced mod 2(N-1).
std::vector<Real> cosine_table(int n) {
  const int period = 2 * (n - 1);
  std::vector<Real> table(period);
  for (int m = 0; m < period; ++m) table[m] = cos(pi() * m / (n - 1));
  return table;
}

// Values at Lobatto nodes -> Chebyshev coefficients (DCT-I).
std::vector<Real> values_to_coeffs(const std::vector<Real>& f) {
  const int n = static_cast<int>(f.size());
  const int period = 2 * (n - 1);
  const auto table = cosine_table(n);
  std::vector<Real> c(n);
  for (int k = 0; k < n; ++k) {
    Real s = 0;
    for (int j = 0; j < n; ++j) {
      Real term = f[j] * table[(static_cast<long>(j) * k) % period];
      if (j == 0 || j == n - 1) term /= 2;
      s += term;
    }
    c[k] = 2 * s / (n - 1);
  }
  c[0] /= 2;
  c[n - 1] /= 2;
  return c;
}

std::vector<Real> coeffs_to_values(const std::vector<Real>& c) {
  const int n = static_cast<int>(c.size());
  const int period = 2 * (n - 1);
  const auto table = cosine_table(n);
  std::vector<Real> f(n);
  for (int j = 0; j < n; ++j) {
    Real s = 0;
    for (int k = 0; k < n; ++k) s += c[k] * table[(static_cast<long>(j) * k) % period];
    f[j] = s;
  }
  return f;
}

// d/dy for y = lo + (hi - lo)(1 + x)/2.
std::vector<Real> derivative_coeffs(const std::vector<Real>& c, const Real& half_width) {
  const int n = static_cast<int>(c.size());
  std::vector<Real> d(n + 1, Real(0));
  for (int k = n - 1; k >= 1; --k) d[k - 1] = d[k + 1] + 2 * k * c[k];
  d[0] /= 2;
  d.resize(n);
  for (auto& x : d) x /= half_width;
  return d;
}

// Some antiderivative in y, truncated to the same length.
std::vector<Real> antiderivative_coeffs(const std::vector<Real>& c, const Real& half_width) {
  const int n = static_cast<int>(c.size());
  std::vector<Real> ext(c);
  ext.push_back(0);
  ext.push_back(0);
  std::vector<Real> a(n, Real(0));
  for (int k = 1; k < n; ++k) {
    const Real prev = (k == 1) ? 2 * ext[0] : ext[k - 1];
    a[k] = (prev - ext[k + 1]) / (2 * k) * half_width;
  }
  return a;
}

Real clenshaw(const std::vector<Real>& c, const Real& x) {
  Real b1 = 0, b2 = 0;
  for (int k = static_cast<int>(c.size()) - 1; k >= 1; --k) {
    Real b0 = 2 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

std::vector<Real> nodes(int n, double lo, double hi) {
  std::vector<Real> y(n);
  const Real lo_r(lo), hi_r(hi);
  for (int j = 0; j < n; ++j) {
    y[j] = lo_r + (hi_r - lo_r) * (1 + cos(pi() * j / (n - 1))) / 2;
  }
  y[0] = hi_r;
  y[n - 1] = lo_r;
  return y;
}

}  // namespace

SpectralCoeff::SpectralCoeff(Family family, double gamma, double xi, double lo, double hi,
                             std::vector<SpectralReal> samples)
    : family_(family), gamma_(gamma), xi_(xi), lo_(lo), hi_(hi), samples_(std::move(samples)) {
  if (static_cast<int>(samples_.size()) < kMinNodes) {
    throw UsageError("spectral representation needs at least " + std::to_string(kMinNodes) +
                     " nodes");
  }
  if (!(lo_ < hi_)) throw DomainError("empty spectral interval");
}

SpectralReal SpectralCoeff::node(int j) const {
  const int n = size();
  if (j == 0) return Real(hi_);
  if (j == n - 1) return Real(lo_);
  return Real(lo_) + (Real(hi_) - Real(lo_)) * (1 + cos(pi() * j / (n - 1))) / 2;
}

const std::vector<SpectralReal>& SpectralCoeff::chebyshev() const {
  if (cheb_.empty()) cheb_ = values_to_coeffs(samples_);
  return cheb_;
}

double SpectralCoeff::tail(int count) const {
  const auto& c = chebyshev();
  Real top = 0, last = 0;
  for (const auto& x : c) top = std::max(top, Real(abs(x)));
  if (top == 0) return 0.0;
  const int n = size();
  for (int k = std::max(0, n - count); k < n; ++k) last = std::max(last, Real(abs(c[k])));
  return static_cast<double>(last / top);
}

SpectralReal SpectralCoeff::eval_exact(const SpectralReal& y) const {
  const Real x = (2 * y - Real(lo_) - Real(hi_)) / (Real(hi_) - Real(lo_));
  return clenshaw(chebyshev(), x);
}

double SpectralCoeff::eval(double y) const {
  for (int j = 0; j < size(); ++j) {
    if (static_cast<double>(node(j)) == y) return static_cast<double>(samples_[j]);
  }
  return static_cast<double>(eval_exact(Real(y)));
}

SpectralCoeff spectral_unit(Family family, double gamma, double xi, int n, double v_lo) {
  if (!(gamma > 0)) throw DomainError("gamma must be positive");
  if (n < kMinNodes) throw UsageError("spectral grids need at least 32 nodes");
  const double lo = family == Family::legendre ? v_lo : 0.0;
  if (!(lo > -1.0 && lo < 1.0)) throw DomainError("v_lo must lie in (-1, 1)");
  return SpectralCoeff(family, gamma, xi, lo, 1.0, std::vector<Real>(n, Real(1)));
}

SpectralCoeff spectral_step(const SpectralCoeff& current, double tail_tol) {
  const double tail = current.tail();
  if (tail > tail_tol) {
    throw ResolutionError("spectral tail " + std::to_string(tail) + " exceeds tolerance with N = " +
                          std::to_string(current.size()));
  }
  const int n = current.size();
  const Real half_width = (Real(current.hi()) - Real(current.lo())) / 2;
  const auto y = nodes(n, current.lo(), current.hi());
  const auto& f = current.samples();
  const auto df = coeffs_to_values(derivative_coeffs(current.chebyshev(), half_width));

  std::vector<Real> integrand(n), next(n);
  if (current.family() == Family::legendre) {
    const Real g = Real(current.gamma()) * Real(current.gamma());
    const Real zeta = Real(current.xi()) - Real(1) / 8;
    for (int j = 0; j < n; ++j) {
      const Real w = 1 + g * y[j] * y[j];
      integrand[j] = ((5 * g * y[j] * y[j] + 1 - g) + 8 * zeta * (1 + g) / w) * f[j];
    }
    auto anti = coeffs_to_values(antiderivative_coeffs(values_to_coeffs(integrand), half_width));
    const Real at_one = anti[0];
    for (int j = 0; j < n; ++j) {
      const Real w = 1 + g * y[j] * y[j];
      next[j] = (1 - y[j] * y[j]) * w / (2 * (1 + g)) * df[j] - (anti[j] - at_one) / (8 * (1 + g));
    }
    next[0] = 0;
  } else {
    for (int j = 0; j < n; ++j) integrand[j] = (1 - 5 * y[j] * y[j]) * f[j];
    auto anti = coeffs_to_values(antiderivative_coeffs(values_to_coeffs(integrand), half_width));
    const Real at_zero = anti[n - 1];
    for (int j = 0; j < n; ++j) {
      next[j] = y[j] * y[j] * (1 - y[j] * y[j]) / 2 * df[j] + (anti[j] - at_zero) / 8;
    }
  }
  return SpectralCoeff(current.family(), current.gamma(), current.xi(), current.lo(), current.hi(),
                       std::move(next));
}

std::vector<SpectralCoeff> spectral_chain(Family family, double gamma, double xi, int kmax,
                                          double tail_tol, double v_lo) {
  if (kmax < 0) throw UsageError("kmax must be nonnegative");
  for (int n = kMinNodes; n <= kMaxNodes; n *= 2) {
    std::vector<SpectralCoeff> chain{spectral_unit(family, gamma, xi, n, v_lo)};
    bool resolved = true;
    for (int k = 1; k <= kmax && resolved; ++k) {
      chain.push_back(spectral_step(chain.back(), tail_tol));
      resolved = chain.back().tail() <= tail_tol;
    }
    if (resolved) return chain;
  }
  throw ResolutionError("spectral chain unresolved at N = " + std::to_string(kMaxNodes));
}

}  // namespace unifexp::kernel
