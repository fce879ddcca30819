#include "unifexp/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "unifexp/closed_forms.hpp"
#include "unifexp/bessel/uniform.hpp"
#include "unifexp/errors.hpp"
#include "unifexp/kernel/integrate.hpp"
#include "unifexp/kernel/spectral.hpp"
#include "unifexp/legendre/uniform.hpp"
#include "unifexp/oracle/oracle.hpp"

namespace unifexp::checks {

using kernel::CoeffExpr;
using kernel::ExactScalar;
using kernel::Monomial;
using kernel::Rational;

Rational random_rational(std::mt19937_64& rng, long max_num, long max_den) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  return kernel::frac(num(rng), den(rng));
}

Rational random_positive_rational(std::mt19937_64& rng, long max_num, long max_den) {
  std::uniform_int_distribution<long> num(1, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  return kernel::frac(num(rng), den(rng));
}

std::vector<std::pair<Rational, Rational>> sample_parameter_pairs(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Rational, Rational>> out;
  for (int i = 0; i < count; ++i) {
    out.emplace_back(random_positive_rational(rng), random_rational(rng));
  }
  return out;
}

namespace {

std::string fmt(const char* format, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, value);
  return buf;
}

using Check = std::function<CheckResult()>;

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    CheckResult r = body();
    r.name = name;
    return r;
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

// ---------------------------------------------------------------- kernel

CheckResult field_axioms() {
  std::mt19937_64 rng(7);
  int failures = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto field = kernel::QuadraticField::make(random_positive_rational(rng));
    const ExactScalar x(field, random_rational(rng), random_rational(rng));
    const ExactScalar y(field, random_rational(rng), random_rational(rng));
    const ExactScalar z(field, random_rational(rng), random_rational(rng));
    bool ok = x + y == y + x && x * y == y * x && (x + y) + z == x + (y + z) &&
              (x * y) * z == x * (y * z) && x * (y + z) == x * y + x * z;
    if (!x.is_zero()) ok = ok && x * x.inverse() == ExactScalar(field, 1);
    failures += ok ? 0 : 1;
  }
  return {"", failures == 0, std::to_string(failures) + " failing triples of 1000"};
}

CheckResult log_cancellation() {
  int steps = 0;
  for (const auto& [g, zeta] : sample_parameter_pairs(5, 11)) {
    const auto field = kernel::QuadraticField::make(g);
    CoeffExpr psi = CoeffExpr::constant(field, zeta, ExactScalar(field, 1));
    for (int k = 1; k <= 6; ++k) {
      const auto step = kernel::integrate_step_legendre_checked(psi);
      if (!step.surviving_logs.is_zero() || !step.next.is_log_free()) {
        return {"", false, "L survived at k = " + std::to_string(k) + ", g = " +
                               kernel::to_canonical_string(g)};
      }
      psi = step.next;
      ++steps;
    }
  }
  return {"", true, std::to_string(steps) + " steps over 5 (g, zeta) pairs"};
}

CheckResult antiderivative_rules() {
  const double gamma = 1.5;
  const auto field = kernel::QuadraticField::make(kernel::frac(9, 4));
  const CoeffExpr zero(field, kernel::frac(-1, 8));
  double worst = 0;
  int checked = 0;
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 3; ++b) {
      for (int over = 0; over <= 1; ++over) {
        const CoeffExpr m = zero.monomial_like(Monomial{a, b, 0}, Rational(1));
        const auto anti = over ? kernel::antiderivative(zero, m) : kernel::antiderivative(m, zero);
        if (!anti.fully_closed()) continue;
        const double h = 1e-5;
        double scale = 0;
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < 20; ++i) {
          const double v = -0.95 + 1.9 * (i + 0.5) / 20;
          double f = m.eval(gamma, v);
          if (over) f /= 1 + gamma * gamma * v * v;
          const double fd = (anti.closed.eval(gamma, v + h) - anti.closed.eval(gamma, v - h)) / (2 * h);
          pts.emplace_back(f, fd);
          scale = std::max(scale, std::abs(f));
        }
        for (const auto& [f, fd] : pts) worst = std::max(worst, std::abs(f - fd) / scale);
        ++checked;
      }
    }
  }
  return {"", worst <= 1e-8, std::to_string(checked) + " integrands, worst " + fmt("%.2e", worst)};
}

CheckResult spectral_agreement() {
  struct Setting {
    double gamma, xi;
    Rational g, xi_exact;
  };
  const Setting settings[] = {{1.0, 0.0, Rational(1), Rational(0)},
                              {2.0, 0.125, Rational(4), kernel::frac(1, 8)},
                              {0.5, -1.0, kernel::frac(1, 4), Rational(-1)}};
  double worst = 0;
  for (const auto& s : settings) {
    const auto chain = kernel::spectral_chain(kernel::Family::legendre, s.gamma, s.xi, 3);
    for (int k = 0; k <= 3; ++k) {
      const CoeffExpr sym = legendre::psi(k, s.g, s.xi_exact - kernel::frac(1, 8));
      for (int i = 0; i <= 32; ++i) {
        const double v = kernel::kDefaultVLo + (1.0 - kernel::kDefaultVLo) * i / 32;
        const double a = sym.eval(s.gamma, v);
        worst = std::max(worst, std::abs(a - chain[k].eval(v)) / std::max(1.0, std::abs(a)));
      }
    }
  }
  return {"", worst <= 1e-12, "worst gap " + fmt("%.2e", worst)};
}

// ---------------------------------------------------------------- bessel

CoeffExpr t_poly(std::initializer_list<std::pair<int, long>> terms, long den) {
  const CoeffExpr& one = bessel::omega(0);
  CoeffExpr out = one.zero_like();
  for (const auto& [a, c] : terms) out += one.monomial_like(Monomial{a, 0, 0}, kernel::frac(c, den));
  return out;
}

CheckResult debye_polynomials() {
  const bool ok = bessel::omega(1) == t_poly({{1, 3}, {3, -5}}, 24) &&
                  bessel::omega(2) == t_poly({{2, 81}, {4, -462}, {6, 385}}, 1152) &&
                  bessel::omega_bar(1) == t_poly({{1, -9}, {3, 7}}, 24);
  return {"", ok, "omega_1, omega_2, omega-bar_1 against hand integration"};
}

CheckResult degree_parity() {
  for (int k = 0; k <= bessel::kMaxOrder; ++k) {
    const auto& w = bessel::omega(k);
    if (w.max_power_a() != 3 * k) return {"", false, "degree mismatch at k = " + std::to_string(k)};
    for (const auto& [m, c] : w.terms()) {
      if ((m.a - k) % 2 != 0) return {"", false, "parity mismatch at k = " + std::to_string(k)};
    }
  }
  return {"", true, "deg omega_k = 3k, exponents share the parity of k, k <= 6"};
}

double bessel_wronskian(int n, double lambda, int m) {
  const auto I = bessel::eval_bessel({n, lambda, m, bessel::Kind::I});
  const auto K = bessel::eval_bessel({n, lambda, m, bessel::Kind::K});
  const auto dI = bessel::eval_bessel({n, lambda, m, bessel::Kind::dI});
  const auto dK = bessel::eval_bessel({n, lambda, m, bessel::Kind::dK});
  // dI, dK are already z-derivatives, so z (I' K - K' I) = 1.
  return std::abs((dI.value * K.value - dK.value * I.value) * (n * lambda) - 1);
}

CheckResult bessel_wronskian_decreasing() {
  std::ostringstream os;
  double previous = INFINITY;
  bool ok = true;
  for (int n : {4, 8, 16, 32}) {
    const double r = bessel_wronskian(n, 2.0, 3);
    os << "n=" << n << ":" << fmt("%.2e", r) << " ";
    ok = ok && r < previous;
    previous = r;
  }
  return {"", ok, os.str()};
}

double bessel_error(int n, double lambda, int m, bessel::Kind kind) {
  const double z = n * lambda;
  const auto ref = kind == bessel::Kind::I ? oracle::besselI_reference(n, z)
                                           : oracle::besselK_reference(n, z);
  const double exact = ref.value_d();
  return std::abs((exact - bessel::eval_bessel({n, lambda, m, kind}).value) / exact);
}

CheckResult bessel_order_improvement() {
  std::ostringstream os;
  bool ok = true;
  for (auto kind : {bessel::Kind::I, bessel::Kind::K}) {
    double previous = INFINITY;
    os << bessel::kind_name(kind) << ":";
    for (int m = 0; m <= 3; ++m) {
      const double e = bessel_error(8, 2.0, m, kind);
      os << " " << fmt("%.2e", e);
      ok = ok && e < previous;
      previous = e;
    }
    os << " ";
  }
  return {"", ok, os.str()};
}

CheckResult bessel_n_scaling() {
  const double ratio = bessel_error(8, 2.0, 3, bessel::Kind::I) / bessel_error(16, 2.0, 3, bessel::Kind::I);
  return {"", ratio >= 8 && ratio <= 32, "error ratio n=8/n=16: " + fmt("%.2f", ratio)};
}

// ---------------------------------------------------------------- legendre

CheckResult endpoint_zero(bool bar) {
  int checked = 0;
  for (const auto& [g, zeta] : sample_parameter_pairs(5, 11)) {
    const auto set = legendre::coefficients(g, zeta, 6);
    for (int k = 1; k <= 6; ++k) {
      const CoeffExpr& c = bar ? set->psi_bar[k] : set->psi[k];
      if (!c.at_one().is_zero()) {
        return {"", false, "nonzero at v = 1 for k = " + std::to_string(k)};
      }
      ++checked;
    }
  }
  return {"", true, std::to_string(checked) + " exact evaluations at v = 1"};
}

CheckResult closed_form_equality() {
  std::mt19937_64 rng(2024);
  int triples = 0;
  for (int i = 0; i < 10; ++i) {
    const Rational g = random_positive_rational(rng);
    const Rational zeta = random_rational(rng);
    const Rational v = random_rational(rng, 20, 21);
    const auto field = kernel::QuadraticField::make(g);
    const auto set = legendre::coefficients(g, zeta, 3);
    for (int k = 1; k <= 3; ++k) {
      const bool ok = set->psi[k].substitute(v) == closed_forms::psi(k, field, zeta).substitute(v) &&
                      set->psi_bar[k].substitute(v) == closed_forms::psi_bar(k, field, zeta).substitute(v);
      if (!ok) return {"", false, "mismatch at k = " + std::to_string(k)};
    }
    ++triples;
  }
  return {"", true, std::to_string(triples) + " random (g, zeta, v) triples, k = 1..3"};
}

CheckResult psi_plus_constants() {
  const auto pairs = sample_parameter_pairs(3, 5);
  for (const auto& [g, zeta] : pairs) {
    const auto s = legendre::coefficients(g, zeta, 3);
    const auto& p = s->psi;
    const CoeffExpr& one = p[0];
    const bool ok =
        s->psi_plus[1] == p[1] - one * kernel::frac(1, 12) &&
        s->psi_plus[2] == p[2] - p[1] * kernel::frac(1, 12) + one * kernel::frac(1, 288) &&
        s->psi_plus[3] ==
            p[3] - p[2] * kernel::frac(1, 12) + p[1] * kernel::frac(1, 288) + one * kernel::frac(139, 51840);
    if (!ok) return {"", false, "Stirling-shifted coefficients differ"};
  }
  return {"", true, "constants 1/12, 1/288, 139/51840 reproduced"};
}

CheckResult cross_relation() {
  std::ostringstream os;
  bool ok = true;
  for (int k = 0; k <= 3; ++k) {
    const auto r = legendre::cross_relation_check(k, 1e4);
    ok = ok && std::abs(r.magnitude_gap) <= 1e-3;
    os << "k=" << k << " gap " << fmt("%.1e", r.magnitude_gap) << " sign " << r.observed_sign << "; ";
  }
  return {"", ok, os.str() + "observed psi_k(0) ~ (-1)^k omega_k(1)"};
}

CheckResult expansion_wronskian() {
  const double x = std::cos(0.1);
  std::ostringstream os;
  double previous = INFINITY;
  bool ok = true;
  for (int n : {4, 8, 16}) {
    legendre::LegendreParams p{n, 1.0, 0.0, x, 3, legendre::Kind::p};
    const double P = legendre::eval_legendre(p).value;
    p.kind = legendre::Kind::q;
    const double Q = legendre::eval_legendre(p).value;
    p.kind = legendre::Kind::dp;
    const double dP = legendre::eval_legendre(p).value;
    p.kind = legendre::Kind::dq;
    const double dQ = legendre::eval_legendre(p).value;
    const double r = std::abs(n * (P * dQ - dP * Q) * (1 - x) * (1 + x) - 1);
    os << "n=" << n << ":" << fmt("%.2e", r) << " ";
    ok = ok && r < previous;
    previous = r;
  }
  return {"", ok, os.str()};
}

CheckResult rewritten_consistency() {
  legendre::ConeAngleParams cp{8, 2.0, 0.1, 0.0, 3, legendre::Kind::p};
  const auto direct = legendre::eval_legendre(legendre::to_legendre_params(cp));
  const auto rewritten = legendre::eval_bessel_form(cp);
  double sum = 0;
  for (double t : direct.terms) sum += t;
  const double gap = std::abs(rewritten.value / direct.value - 1);
  const double last = std::abs(direct.terms.back() / sum);
  return {"", gap < 10 * last,
          "ratio-1 " + fmt("%.2e", gap) + " vs m=3 term " + fmt("%.2e", last)};
}

CheckResult eta_tilde_limit() {
  const double eta1 = bessel::eta(1.0);
  double previous = INFINITY;
  bool ok = std::abs(eta1 - 0.5328399) <= 1e-6;
  std::ostringstream os;
  for (double theta : {1e-2, 1e-3, 1e-4}) {
    const double gap = std::abs(legendre::eta_tilde(1.0, theta) - eta1);
    os << fmt("%.0e", theta) << ":" << fmt("%.2e", gap) << " ";
    ok = ok && gap < previous;
    previous = gap;
  }
  const double consistency =
      std::abs(legendre::eta_tilde(1.0, 0.1) - legendre::eta_tilde_via_phase(1.0, 0.1));
  ok = ok && consistency <= 1e-14;
  return {"", ok, os.str() + "arrangements differ by " + fmt("%.1e", consistency)};
}

// ---------------------------------------------------------------- oracle

struct OracleCase {
  int n;
  double gamma, xi;
};
constexpr OracleCase kOracleCases[] = {{1, 1.0, 0.0}, {4, 1.0, 0.0}, {4, 2.0, 0.125}};
constexpr double kOracleXs[] = {-0.9, -0.5, 0.0, 0.5, 0.9, 0.995};

CheckResult oracle_wronskian() {
  double worst = 0;
  for (const auto& c : kOracleCases) {
    for (double x : kOracleXs) {
      const auto p = oracle::p_reference(c.n, c.gamma, c.xi, x);
      const auto q = oracle::q_reference(c.n, c.gamma, c.xi, x);
      worst = std::max(worst, std::abs(oracle::legendre_wronskian_residual(x, p, q)));
    }
  }
  return {"", worst <= 1e-10, "worst |W - 1| " + fmt("%.2e", worst)};
}

CheckResult oracle_ode_residual() {
  double worst = 0;
  for (const auto& c : kOracleCases) {
    for (double x : kOracleXs) {
      worst = std::max(worst, oracle::legendre_ode_residual(c.n, c.gamma, c.xi, x,
                                                            oracle::p_reference(c.n, c.gamma, c.xi, x)));
      worst = std::max(worst, oracle::legendre_ode_residual(c.n, c.gamma, c.xi, x,
                                                            oracle::q_reference(c.n, c.gamma, c.xi, x)));
    }
  }
  for (double z : {1.0, 8.0, 40.0}) {
    worst = std::max(worst, oracle::bessel_ode_residual(4, z, oracle::besselI_reference(4, z)));
    worst = std::max(worst, oracle::bessel_ode_residual(4, z, oracle::besselK_reference(4, z)));
  }
  return {"", worst <= 1e-25, "worst relative residual " + fmt("%.2e", worst)};
}

CheckResult oracle_realness() {
  double worst = 0;
  const unsigned digits = oracle::OracleConfig{}.digits;
  for (double gamma : {0.1, 1.0, 3.0}) {
    for (double x : {-0.5, 0.3, 0.9}) {
      worst = std::max(worst, oracle::p_reference(4, gamma, 0.0, x).imag_residue);
      worst = std::max(worst, oracle::q_reference_series(4, gamma, 0.0, x).imag_residue);
    }
  }
  return {"", worst <= std::pow(10.0, -double(digits) / 2), "worst imaginary residue " + fmt("%.2e", worst)};
}

CheckResult oracle_bessel_pair() {
  const auto I = oracle::besselI_reference(4, 8.0);
  const auto K = oracle::besselK_reference(4, 8.0);
  const auto Im = oracle::besselI_reference(3, 8.0);
  const auto Ip = oracle::besselI_reference(5, 8.0);
  oracle::PrecisionScope scope(80);
  const oracle::Mp w = (I.derivative * K.value - K.derivative * I.value) * 8 - 1;
  const oracle::Mp rec = (Im.value - Ip.value - oracle::Mp(1) * I.value) / I.value;
  const double wr = boost::multiprecision::abs(w).convert_to<double>();
  const double rr = boost::multiprecision::abs(rec).convert_to<double>();
  return {"", wr <= 1e-25 && rr <= 1e-30,
          "|z W - 1| " + fmt("%.1e", wr) + ", recurrence " + fmt("%.1e", rr)};
}

std::vector<std::pair<std::string, Check>> suite_checks(std::string_view suite) {
  std::vector<std::pair<std::string, Check>> out;
  const bool all = suite == "all";
  if (all || suite == "kernel") {
    out.emplace_back("field_axioms", field_axioms);
    out.emplace_back("log_cancellation_k<=6", log_cancellation);
    out.emplace_back("antiderivative_rules", antiderivative_rules);
    out.emplace_back("spectral_symbolic_agreement", spectral_agreement);
  }
  if (all || suite == "bessel") {
    out.emplace_back("debye_polynomials", debye_polynomials);
    out.emplace_back("omega_degree_parity", degree_parity);
    out.emplace_back("bessel_wronskian_decreasing", bessel_wronskian_decreasing);
    out.emplace_back("bessel_order_improvement", bessel_order_improvement);
    out.emplace_back("bessel_n_scaling", bessel_n_scaling);
  }
  if (all || suite == "legendre") {
    out.emplace_back("psi_endpoint_zero", [] { return endpoint_zero(false); });
    out.emplace_back("psi_bar_endpoint_zero", [] { return endpoint_zero(true); });
    out.emplace_back("closed_form_equality", closed_form_equality);
    out.emplace_back("psi_plus_constants", psi_plus_constants);
    out.emplace_back("cross_relation_magnitude", cross_relation);
    out.emplace_back("expansion_wronskian_decreasing", expansion_wronskian);
    out.emplace_back("rewritten_form_consistency", rewritten_consistency);
    out.emplace_back("eta_tilde_limit", eta_tilde_limit);
  }
  if (all || suite == "oracle") {
    out.emplace_back("wronskian_residual<=1e-10", oracle_wronskian);
    out.emplace_back("ode_residual<=1e-25", oracle_ode_residual);
    out.emplace_back("hypergeometric_realness", oracle_realness);
    out.emplace_back("bessel_pair_consistency", oracle_bessel_pair);
  }
  if (out.empty()) throw UsageError("unknown suite '" + std::string(suite) + "'");
  return out;
}

}  // namespace

std::vector<CheckResult> run_suite(std::string_view suite) {
  std::vector<CheckResult> results;
  for (const auto& [name, check] : suite_checks(suite)) results.push_back(guarded(name, check));
  return results;
}

}  // namespace unifexp::checks
