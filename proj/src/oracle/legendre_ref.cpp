#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "unifexp/errors.hpp"
#include "unifexp/oracle/oracle.hpp"

namespace unifexp::oracle {

namespace bmp = boost::multiprecision;

OracleConfig OracleConfig::from_env() {
  OracleConfig cfg;
  if (const char* env = std::getenv("UNIFEXP_ORACLE_DIGITS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long digits = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || digits <= 0) {
      throw UsageError("UNIFEXP_ORACLE_DIGITS must be a positive integer");
    }
    cfg.digits = static_cast<unsigned>(digits);
  }
  cfg.validate();
  return cfg;
}

void OracleConfig::validate() const {
  if (digits < 30) throw UsageError("oracle precision must be at least 30 digits");
  if (!(series_tol > 0) || !(ode_tol > 0)) throw UsageError("oracle tolerances must be positive");
  if (max_terms < 1) throw UsageError("oracle term budget must be positive");
}

namespace {

struct Inputs {
  Mp x, gamma, xi, B;  // B = n^2 gamma^2 + 2 xi
  MpComplex a, b;      // -mu, mu + 1
};

Inputs make_inputs(int n, double gamma, double xi, double x) {
  if (n < 1) throw DomainError("order n must be a positive integer");
  if (!(gamma > 0)) throw DomainError("gamma must be positive");
  if (!(std::abs(x) < 1)) throw DomainError("|x| must be below 1");
  Inputs in;
  in.x = Mp(x);
  in.gamma = Mp(gamma);
  in.xi = Mp(xi);
  const Mp nn(n);
  in.B = nn * nn * in.gamma * in.gamma + 2 * in.xi;
  const MpComplex root = sqrt(MpComplex(1 - 8 * in.xi - 4 * nn * nn * in.gamma * in.gamma));
  const MpComplex mu = MpComplex(Mp(-0.5)) + MpComplex(Mp(0.5)) * root;
  in.a = -mu;
  in.b = mu + MpComplex(Mp(1));
  return in;
}

Mp factorial(int n) {
  Mp f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Digits lost to cancellation in a sum with the given largest term.
double lost_digits(const Mp& largest, const Mp& result) {
  if (result == 0) return 1e9;
  const Mp ratio = largest / bmp::abs(result);
  return ratio > 1 ? bmp::log10(ratio).convert_to<double>() : 0.0;
}

struct Series {
  MpComplex f, df, d2f;  // in w
  Mp largest;
  double tail = 0;
};

// F(a, b; c; w) with its first two w-derivatives.
Series gauss_series(const MpComplex& a, const MpComplex& b, const Mp& c, const Mp& w,
                    const OracleConfig& cfg) {
  Series s;
  MpComplex t(Mp(1));
  const Mp tol(cfg.series_tol);
  for (long j = 0;; ++j) {
    if (j > cfg.max_terms) throw PrecisionError("hypergeometric series exceeded its term budget");
    const Mp jj(j);
    s.f += t;
    s.df += t * MpComplex(jj / w);
    s.d2f += t * MpComplex(jj * (jj - 1) / (w * w));
    s.largest = bmp::max(s.largest, abs(t) * (1 + jj * jj));
    MpComplex next = t * (a + MpComplex(jj)) * (b + MpComplex(jj)) / MpComplex((c + jj) * (jj + 1)) *
                     MpComplex(w);
    const Mp size = abs(next) * (1 + (jj + 1) * (jj + 1));
    const Mp ratio = abs(t) > 0 ? abs(next) / abs(t) : Mp(0);
    t = next;
    if (ratio < 1 && size < tol * abs(s.f)) {
      // geometric tail bound
      const Mp r = bmp::max(ratio, w);
      s.tail = (size / (1 - r) / abs(s.f)).convert_to<double>();
      break;
    }
  }
  return s;
}

OracleValue p_at(int n, const Inputs& in, const OracleConfig& cfg, double* lost) {
  const Mp one(1);
  const Mp w = (one - in.x) / 2;
  const Series s = gauss_series(in.a, in.b, Mp(n + 1), w, cfg);
  const Mp one_mx2 = (one - in.x) * (one + in.x);
  const Mp u = bmp::exp(Mp(n) / 2 * bmp::log((one - in.x) / (one + in.x))) / factorial(n);
  const Mp du = -n * u / one_mx2;
  const Mp d2u = n * u * (n - 2 * in.x) / (one_mx2 * one_mx2);
  OracleValue out;
  out.value = u * s.f.re;
  out.derivative = du * s.f.re - u * s.df.re / 2;
  out.second = d2u * s.f.re - du * s.df.re + u * s.d2f.re / 4;
  out.imag_residue = (bmp::abs(s.f.im) / bmp::abs(s.f.re)).convert_to<double>();
  out.err_estimate = s.tail;
  *lost = lost_digits(s.largest, s.f.re);
  return out;
}

// Repeats `body` with more digits until cancellation leaves the requested precision intact.
template <class Body>
OracleValue with_adaptive_precision(const OracleConfig& cfg, Body body) {
  unsigned digits = cfg.working_digits();
  for (int attempt = 0; attempt < 4; ++attempt) {
    PrecisionScope scope(digits);
    double lost = 0;
    OracleValue v = body(&lost);
    if (lost <= static_cast<double>(digits - cfg.digits) - 5) {
      v.err_estimate = std::max(v.err_estimate, std::pow(10.0, -static_cast<double>(cfg.digits)));
      return v;
    }
    digits = cfg.working_digits() + static_cast<unsigned>(std::ceil(lost)) + 10;
  }
  throw PrecisionError("cancellation exceeded the adaptive precision budget");
}

}  // namespace

OracleValue p_reference(int n, double gamma, double xi, double x, const OracleConfig& cfg) {
  cfg.validate();
  return with_adaptive_precision(cfg, [&](double* lost) {
    return p_at(n, make_inputs(n, gamma, xi, x), cfg, lost);
  });
}

namespace {

OracleValue q_series_at(int n, const Inputs& in, const OracleConfig& cfg, double* lost) {
  const Mp one(1);
  const Mp w = (one - in.x) / 2;
  const Mp log_w = bmp::log(w);
  const MpComplex one_c(one);
  const Mp tol(cfg.series_tol);
  Mp largest(0);

  // Terminating part: ((n-1)! n!/2) sum_{k<n} (a)_k (b)_k / (k! (1-n)_k) w^k
  MpComplex fin, dfin, d2fin;
  {
    MpComplex t(one);
    for (int k = 0; k < n; ++k) {
      const Mp kk(k);
      fin += t;
      if (k >= 1) dfin += t * MpComplex(kk / w);
      if (k >= 2) d2fin += t * MpComplex(kk * (kk - 1) / (w * w));
      largest = bmp::max(largest, abs(t));
      t = t * (in.a + MpComplex(kk)) * (in.b + MpComplex(kk)) / MpComplex((kk + 1) * (1 - n + kk)) *
          MpComplex(w);
    }
    const Mp scale = factorial(n - 1) * factorial(n) / 2;
    fin *= MpComplex(scale);
    dfin *= MpComplex(scale);
    d2fin *= MpComplex(scale);
    largest *= scale;
  }

  // (a)_n (b)_n
  MpComplex pochhammer_n(one);
  for (int k = 0; k < n; ++k) {
    pochhammer_n *= (in.a + MpComplex(Mp(k))) * (in.b + MpComplex(Mp(k)));
  }
  const Mp sign = (n % 2 == 0) ? Mp(1) : Mp(-1);
  const MpComplex log_scale = pochhammer_n * MpComplex(sign * factorial(n) / 2);

  // sum_k d_k w^{k+n} [ln w + c_k],  d_k = (a+n)_k (b+n)_k / (k! (k+n)!)
  MpComplex psi_a = digamma(in.a + MpComplex(Mp(n)));
  MpComplex psi_b = digamma(in.b + MpComplex(Mp(n)));
  Mp psi_k1 = digamma(MpComplex(one)).re;  // psi(k+1)
  Mp psi_kn1 = psi_k1;                     // psi(k+n+1)
  for (int i = 1; i <= n; ++i) psi_kn1 += one / i;

  MpComplex g, dg, d2g;
  MpComplex d = MpComplex(one / factorial(n));
  Mp w_pow = bmp::pow(w, n);  // w^{k+n}
  double tail = 0;
  for (long k = 0;; ++k) {
    if (k > cfg.max_terms) throw PrecisionError("logarithmic series exceeded its term budget");
    const Mp m(k + n);
    const MpComplex c = MpComplex(log_w - psi_k1 - psi_kn1) + psi_a + psi_b;
    const MpComplex term = d * MpComplex(w_pow);
    g += term * c;
    dg += term * (MpComplex(m) * c + one_c) / MpComplex(w);
    d2g += term * (MpComplex(m * (m - 1)) * c + MpComplex(2 * m - 1)) / MpComplex(w * w);
    const Mp size = abs(term) * abs(c) * (1 + m * m);
    largest = bmp::max(largest, abs(log_scale) * size);

    const Mp kk(k);
    const MpComplex an = in.a + MpComplex(Mp(n) + kk);
    const MpComplex bn = in.b + MpComplex(Mp(n) + kk);
    psi_a += one_c / an;
    psi_b += one_c / bn;
    psi_k1 += one / (kk + 1);
    psi_kn1 += one / (kk + n + 1);
    const MpComplex next_d = d * an * bn / MpComplex((kk + 1) * (kk + n + 1));
    const Mp ratio = abs(next_d) * w / abs(d);
    d = next_d;
    w_pow *= w;
    if (ratio < 1 && size < tol * abs(g) && k > 2) {
      tail = (size / (1 - bmp::max(ratio, w)) / abs(g)).convert_to<double>();
      break;
    }
  }

  const MpComplex h = fin - log_scale * g;
  const MpComplex dh = dfin - log_scale * dg;
  const MpComplex d2h = d2fin - log_scale * d2g;

  const Mp one_mx2 = (one - in.x) * (one + in.x);
  const Mp u = bmp::exp(Mp(n) / 2 * bmp::log((one + in.x) / (one - in.x))) / factorial(n);
  const Mp du = n * u / one_mx2;
  const Mp d2u = n * u * (n + 2 * in.x) / (one_mx2 * one_mx2);

  OracleValue out;
  out.value = u * h.re;
  out.derivative = du * h.re - u * dh.re / 2;
  out.second = d2u * h.re - du * dh.re + u * d2h.re / 4;
  out.imag_residue = (bmp::abs(h.im) / bmp::abs(h.re)).convert_to<double>();
  out.err_estimate = tail;
  *lost = lost_digits(largest, h.re);
  return out;
}

// One Taylor step of (1-x^2)^2 y'' - 2x(1-x^2) y' - (B(1-x^2) + n^2) y = 0 from x0 to x0 + h.
void taylor_step(int n, const Mp& B, const Mp& x0, const Mp& h, Mp& y, Mp& dy, const Mp& tol,
                 long max_terms) {
  const Mp e0 = 1 - x0 * x0, e1 = -2 * x0, e2(-1);
  const Mp nn2 = Mp(n) * n;
  const Mp p2[5] = {e0 * e0, 2 * e0 * e1, e1 * e1 + 2 * e0 * e2, 2 * e1 * e2, e2 * e2};
  const Mp p1[4] = {-2 * x0 * e0, -2 * (x0 * e1 + e0), -2 * (x0 * e2 + e1), -2 * e2};
  const Mp p0[3] = {-(B * e0 + nn2), -B * e1, -B * e2};

  std::vector<Mp> c{y, dy};
  Mp value = y + dy * h;
  Mp slope = dy;
  Mp hp(1);  // h^{j-1}
  int small = 0;
  for (long m = 0;; ++m) {
    if (m > max_terms) throw PrecisionError("Taylor step exceeded its term budget");
    Mp acc(0);
    for (int i = 1; i <= 4; ++i) {
      const long j = m - i + 2;
      if (j >= 0) acc += p2[i] * Mp(j) * Mp(j - 1) * c[j];
    }
    for (int i = 0; i <= 3; ++i) {
      const long j = m - i + 1;
      if (j >= 0) acc += p1[i] * Mp(j) * c[j];
    }
    for (int i = 0; i <= 2; ++i) {
      const long j = m - i;
      if (j >= 0) acc += p0[i] * c[j];
    }
    c.push_back(-acc / (p2[0] * Mp(m + 2) * Mp(m + 1)));
    const long j = m + 2;
    hp *= h;
    const Mp term = c[j] * hp * h;
    value += term;
    slope += Mp(j) * c[j] * hp;
    const Mp size = bmp::abs(term) * (1 + j);
    small = (size < tol * (bmp::abs(value) + bmp::abs(slope * h))) ? small + 1 : 0;
    if (small >= 3) break;
  }
  y = value;
  dy = slope;
}

}  // namespace

OracleValue q_reference_series(int n, double gamma, double xi, double x, const OracleConfig& cfg) {
  cfg.validate();
  return with_adaptive_precision(cfg, [&](double* lost) {
    return q_series_at(n, make_inputs(n, gamma, xi, x), cfg, lost);
  });
}

OracleValue q_reference_ode(int n, double gamma, double xi, double x, const OracleConfig& cfg) {
  cfg.validate();
  // Integrating towards x = -1 follows the recessive direction of q; the dominant
  // solution grows relative to it by about exp(2 n |Delta S|), which costs digits.
  double extra = 10;
  if (x < 0) {
    const double g = gamma * gamma;
    const double v = x / std::sqrt(1 + g * (1 - x) * (1 + x));
    const double delta = std::atan2(gamma * (1 - v), 1 + g * v) - std::atan(gamma);
    const double dS = 0.5 * (std::log1p(-v) - std::log1p(v)) + gamma * delta;
    extra += 2 * n * std::abs(dS) / std::log(10.0);
  }
  const OracleValue p0 = p_reference(n, gamma, xi, 0.0, cfg);
  PrecisionScope scope(cfg.working_digits() + static_cast<unsigned>(std::ceil(extra)));
  const Inputs in = make_inputs(n, gamma, xi, x);
  if (p0.derivative == 0 || p0.value == 0) throw DomainError("p or p' vanishes at x = 0");
  Mp y = -1 / (2 * Mp(p0.derivative));
  Mp dy = 1 / (2 * Mp(p0.value));
  Mp pos(0);
  const Mp target = in.x;
  const Mp tol(cfg.ode_tol);
  const Mp nn2 = Mp(n) * n;
  long steps = 0;
  while (pos != target) {
    const Mp one_mx2 = 1 - pos * pos;
    const Mp k_loc = bmp::sqrt(in.B * one_mx2 + nn2) / one_mx2;
    Mp h = bmp::min((1 - bmp::abs(pos)) / 2, Mp(8) / k_loc);
    const Mp remaining = target - pos;
    if (bmp::abs(remaining) <= h) {
      h = remaining;
    } else if (remaining < 0) {
      h = -h;
    }
    taylor_step(n, in.B, pos, h, y, dy, tol, cfg.max_terms);
    pos = (bmp::abs(remaining) <= bmp::abs(h)) ? target : pos + h;
    if (++steps > cfg.max_terms) throw PrecisionError("ODE integration exceeded its step budget");
  }
  OracleValue out;
  const Mp one_mx2 = (1 - in.x) * (1 + in.x);
  out.value = y;
  out.derivative = dy;
  out.second = (2 * in.x * dy + (in.B + nn2 / one_mx2) * y) / one_mx2;
  out.err_estimate = std::max(cfg.ode_tol * static_cast<double>(steps), p0.err_estimate);
  return out;
}

OracleValue q_reference(int n, double gamma, double xi, double x, const OracleConfig& cfg) {
  OracleValue series = q_reference_series(n, gamma, xi, x, cfg);
  if (!cfg.cross_validate) return series;
  const OracleValue ode = q_reference_ode(n, gamma, xi, x, cfg);
  PrecisionScope scope(cfg.working_digits());
  const double dv = (bmp::abs(Mp(series.value) - Mp(ode.value)) / bmp::abs(Mp(series.value))).convert_to<double>();
  const double dd = (bmp::abs(Mp(series.derivative) - Mp(ode.derivative)) /
                     bmp::abs(Mp(series.derivative))).convert_to<double>();
  if (dv > 1e-25 || dd > 1e-25) {
    throw IntegrityError("q constructions disagree: relative gaps " + std::to_string(dv) + ", " +
                         std::to_string(dd));
  }
  series.err_estimate = std::max({series.err_estimate, dv, dd});
  return series;
}

double legendre_ode_residual(int n, double gamma, double xi, double x, const OracleValue& y) {
  PrecisionScope scope(std::max(Mp(y.value).precision(), 30u));
  const Mp X(x), G(gamma), XI(xi), nn2 = Mp(n) * n;
  const Mp one_mx2 = (1 - X) * (1 + X);
  const Mp t1 = one_mx2 * y.second;
  const Mp t2 = -2 * X * y.derivative;
  const Mp t3 = -(nn2 * G * G + nn2 / one_mx2 + 2 * XI) * y.value;
  const Mp scale = bmp::abs(t1) + bmp::abs(t2) + bmp::abs(t3);
  return (bmp::abs(t1 + t2 + t3) / scale).convert_to<double>();
}

double legendre_wronskian_residual(double x, const OracleValue& p, const OracleValue& q) {
  PrecisionScope scope(std::max(Mp(p.value).precision(), 30u));
  const Mp X(x);
  const Mp w = (1 - X) * (1 + X) * (p.value * q.derivative - p.derivative * q.value);
  return (w - 1).convert_to<double>();
}

}  // namespace unifexp::oracle
