#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <vector>

namespace unifexp::kernel {

enum class Family { bessel, legendre };

using SpectralReal = boost::multiprecision::cpp_bin_float_quad;

/// Samples of one coefficient function at N Chebyshev-Lobatto nodes of [lo, hi].
///
/// Node j sits at  lo + (hi - lo)(1 + cos(pi j/(N-1)))/2,  so node 0 is hi and
/// node N-1 is lo. Legendre coefficients live on [v_lo, 1] and are anchored at
/// v = 1 (node 0); Bessel coefficients live on [0, 1] in t, anchored at t = 0.
class SpectralCoeff {
 public:
  SpectralCoeff(Family family, double gamma, double xi, double lo, double hi,
                std::vector<SpectralReal> samples);

  Family family() const { return family_; }
  double gamma() const { return gamma_; }
  double xi() const { return xi_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int size() const { return static_cast<int>(samples_.size()); }
  const std::vector<SpectralReal>& samples() const { return samples_; }
  SpectralReal node(int j) const;

  // Chebyshev coefficients c_0..c_{N-1} of the interpolant.
  const std::vector<SpectralReal>& chebyshev() const;
  // max of the last `count` |c_k| relative to max |c_k|.
  double tail(int count = 4) const;

  // Interpolant at y; returns the stored sample when y is a node.
  double eval(double y) const;
  SpectralReal eval_exact(const SpectralReal& y) const;

 private:
  Family family_;
  double gamma_;
  double xi_;
  double lo_;
  double hi_;
  std::vector<SpectralReal> samples_;
  mutable std::vector<SpectralReal> cheb_;
};

inline constexpr double kDefaultVLo = -0.999;
inline constexpr int kMinNodes = 32;
inline constexpr int kMaxNodes = 1024;
inline constexpr double kDefaultTail = 1e-13;

// psi_0 = 1 (Legendre, on [v_lo, 1]) or omega_0 = 1 (Bessel, on [0, 1]).
SpectralCoeff spectral_unit(Family family, double gamma, double xi, int nodes,
                            double v_lo = kDefaultVLo);

// One recurrence step. Throws ResolutionError if the input's Chebyshev tail
// exceeds tail_tol relative to its largest coefficient.
SpectralCoeff spectral_step(const SpectralCoeff& current, double tail_tol = kDefaultTail);

// Coefficients 0..kmax, doubling N from kMinNodes until every member of the
// chain has a tail below tail_tol. Throws ResolutionError beyond kMaxNodes.
std::vector<SpectralCoeff> spectral_chain(Family family, double gamma, double xi, int kmax,
                                          double tail_tol = 1e-20, double v_lo = kDefaultVLo);

}  // namespace unifexp::kernel
