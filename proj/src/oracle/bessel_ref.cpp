#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

#include "unifexp/errors.hpp"
#include "unifexp/oracle/oracle.hpp"

namespace unifexp::oracle {

namespace bmp = boost::multiprecision;

OracleValue besselI_reference(int n, double z, const OracleConfig& cfg) {
  cfg.validate();
  if (n < 0) throw DomainError("order must be nonnegative");
  if (!(z >= 0)) throw DomainError("argument must be nonnegative");
  PrecisionScope scope(cfg.working_digits());
  OracleValue out;
  out.value = out.derivative = out.second = 0;
  const Mp Z(z);
  if (z == 0) {
    out.value = n == 0 ? 1 : 0;
    out.derivative = n == 1 ? Mp(0.5) : Mp(0);
    out.second = n == 0 ? Mp(0.5) : (n == 2 ? Mp(0.25) : Mp(0));
    return out;
  }
  const Mp half = Z / 2;
  const Mp tol(cfg.series_tol);
  // (z/2)^{n+2j} / (j! (n+j)!)
  Mp t = bmp::pow(half, n);
  for (int i = 2; i <= n; ++i) t /= i;
  for (long j = 0;; ++j) {
    if (j > cfg.max_terms) throw PrecisionError("Bessel I series exceeded its term budget");
    const Mp e(n + 2 * j);
    out.value += t;
    out.derivative += e / Z * t;
    out.second += e * (e - 1) / (Z * Z) * t;
    t *= half * half / (Mp(j + 1) * Mp(n + j + 1));
    if (Mp(j) > half && t * (1 + e * e) < tol * out.value) {
      out.err_estimate = (2 * t * (1 + e * e) / out.value).convert_to<double>();
      break;
    }
  }
  if (!bmp::isfinite(out.value)) throw PrecisionError("Bessel I overflowed the working precision");
  return out;
}

OracleValue besselK_reference(int n, double z, const OracleConfig& cfg) {
  cfg.validate();
  if (n < 0) throw DomainError("order must be nonnegative");
  if (!(z > 0)) throw DomainError("argument must be positive");
  PrecisionScope scope(cfg.working_digits());
  const Mp Z(z);
  // Orders n-2 .. n+2; cosh is even in the order.
  std::array<Mp, 5> nu;
  for (int i = 0; i < 5; ++i) nu[i] = Mp(std::abs(n - 2 + i));

  const Mp eps = epsilon_digits(cfg.working_digits());
  // sum_{s = start, start + step, ...} f_nu(s) until the integrand is negligible
  auto sweep = [&](const Mp& start, const Mp& step, std::array<Mp, 5>& acc) {
    for (long i = 0;; ++i) {
      if (i > cfg.max_terms) throw PrecisionError("K quadrature exceeded its node budget");
      const Mp s = start + step * i;
      const Mp base = bmp::exp(-Z * bmp::cosh(s));
      bool negligible = true;
      for (int k = 0; k < 5; ++k) {
        const Mp f = base * bmp::cosh(nu[k] * s);
        acc[k] += f;
        if (f > eps * acc[k] || s * Z < nu[k]) negligible = false;
      }
      if (negligible && i > 4) break;
    }
  };

  Mp h(0.5);
  std::array<Mp, 5> sum;
  for (auto& x : sum) x = 0;
  sweep(Mp(0), h, sum);
  for (auto& x : sum) x -= bmp::exp(-Z) / 2;  // trapezoid end weight at s = 0
  std::array<Mp, 5> estimate, previous;
  for (int k = 0; k < 5; ++k) estimate[k] = h * sum[k];

  const Mp tol = bmp::max(Mp(cfg.series_tol), eps);
  double err = 1;
  for (int level = 0; level < 30; ++level) {
    previous = estimate;
    std::array<Mp, 5> odd;
    for (auto& x : odd) x = 0;
    sweep(h / 2, h, odd);
    h /= 2;
    for (int k = 0; k < 5; ++k) {
      sum[k] += odd[k];
      estimate[k] = h * sum[k];
    }
    Mp worst(0);
    for (int k = 0; k < 5; ++k) {
      worst = bmp::max(worst, bmp::abs(estimate[k] - previous[k]) / bmp::abs(estimate[k]));
    }
    err = worst.convert_to<double>();
    if (worst < tol && level >= 2) break;
    if (level == 29) throw PrecisionError("K quadrature did not converge");
  }

  OracleValue out;
  out.value = estimate[2];
  out.derivative = -(estimate[1] + estimate[3]) / 2;
  out.second = (estimate[0] + 2 * estimate[2] + estimate[4]) / 4;
  out.err_estimate = err;
  return out;
}

double bessel_ode_residual(int n, double z, const OracleValue& y) {
  PrecisionScope scope(std::max(Mp(y.value).precision(), 30u));
  const Mp Z(z), nn2 = Mp(n) * n;
  const Mp t1 = Z * Z * y.second;
  const Mp t2 = Z * y.derivative;
  const Mp t3 = -(Z * Z + nn2) * y.value;
  const Mp scale = bmp::abs(t1) + bmp::abs(t2) + bmp::abs(t3);
  return (bmp::abs(t1 + t2 + t3) / scale).convert_to<double>();
}

std::vector<LimitRow> limit_check_bessel(int n, double lambda, double xi,
                                         const std::vector<double>& thetas,
                                         const OracleConfig& cfg) {
  if (!(lambda > 0)) throw DomainError("lambda must be positive");
  const OracleValue bi = besselI_reference(n, n * lambda, cfg);
  const OracleValue bk = besselK_reference(n, n * lambda, cfg);
  std::vector<LimitRow> rows;
  for (double theta : thetas) {
    if (!(theta > 0 && theta < 1.5707963267948966)) throw DomainError("theta must lie in (0, pi/2)");
    const double gamma = lambda / std::sin(theta);
    const double x = std::cos(theta);
    const OracleValue p = p_reference(n, gamma, xi, x, cfg);
    const OracleValue q = q_reference(n, gamma, xi, x, cfg);
    PrecisionScope scope(cfg.working_digits());
    const Mp G(gamma), XI(xi), nn(n);
    const Mp disc = 1 - 8 * XI - 4 * nn * nn * G * G;
    // |mu| for mu = -1/2 + sqrt(disc)/2
    const Mp abs_mu = disc >= 0 ? bmp::abs(Mp(-0.5) + bmp::sqrt(disc) / 2)
                                : bmp::sqrt(Mp(0.25) - disc / 4);
    const Mp scale = bmp::pow(abs_mu, n);
    LimitRow row;
    row.theta = theta;
    row.p_scaled = (scale * bmp::abs(p.value)).convert_to<double>();
    row.q_scaled = (bmp::abs(q.value) / scale).convert_to<double>();
    row.bessel_i = bi.value_d();
    row.bessel_k = bk.value_d();
    row.gap_p = (bmp::abs(scale * bmp::abs(p.value) / bi.value - 1)).convert_to<double>();
    row.gap_q = (bmp::abs(bmp::abs(q.value) / scale / bk.value - 1)).convert_to<double>();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace unifexp::oracle
