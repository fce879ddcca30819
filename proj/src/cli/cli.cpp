#include "unifexp/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

#include "unifexp/bessel/uniform.hpp"
#include "unifexp/checks.hpp"
#include "unifexp/errors.hpp"
#include "unifexp/kernel/serialize.hpp"
#include "unifexp/legendre/uniform.hpp"
#include "unifexp/oracle/oracle.hpp"

namespace unifexp::cli {

namespace {

using json = nlohmann::ordered_json;

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

// --------------------------------------------------------------- eval

struct EvalArgs {
  std::string family;
  std::string kind;
  int n = 0;
  std::optional<double> lambda, gamma, x, theta;
  double xi = 0.0;
  int order = 3;
  bool json_out = false;
  bool rewritten = false;
};

void check_order(int order) {
  if (order < 0) throw DomainError("order must be non-negative");
  if (order > legendre::kMaxOrder) {
    throw DomainError("order exceeds K_max = " + std::to_string(legendre::kMaxOrder));
  }
}

template <class Eval>
void emit_terms(json& doc, const Eval& e) {
  doc["value"] = e.overflow ? json(nullptr) : number(e.value);
  doc["log_scale"] = e.overflow ? json(e.log_abs) : json(nullptr);
  if (e.overflow) doc["sign"] = e.sign;
  json terms = json::array();
  for (double t : e.terms) terms.push_back(number(t));
  doc["terms"] = terms;
}

template <class Eval>
void print_text(std::ostream& out, const Eval& e) {
  if (e.overflow) {
    out << "value = " << (e.sign < 0 ? "-" : "") << "exp(" << g17(e.log_abs) << ")\n";
  } else {
    out << "value = " << g17(e.value) << "\n";
  }
  for (std::size_t k = 0; k < e.terms.size(); ++k) out << "term[" << k << "] = " << g17(e.terms[k]) << "\n";
}

int cmd_eval(const EvalArgs& a, std::ostream& out, std::ostream& err) {
  check_order(a.order);
  if (a.family == "bessel") {
    if (!a.lambda) throw UsageError("--lambda is required for the bessel family");
    const auto e = bessel::eval_bessel({a.n, *a.lambda, a.order, bessel::parse_kind(a.kind)});
    if (a.json_out) {
      json doc;
      emit_terms(doc, e);
      doc["t"] = e.t;
      doc["eta"] = e.eta;
      out << doc.dump(2) << "\n";
    } else {
      print_text(out, e);
      out << "t = " << g17(e.t) << "\neta = " << g17(e.eta) << "\n";
    }
    return kOk;
  }
  const auto kind = legendre::parse_kind(a.kind);
  legendre::LegendreEval e;
  if (a.theta) {
    if (!a.lambda) throw UsageError("--theta needs --lambda");
    legendre::ConeAngleParams cp{a.n, *a.lambda, *a.theta, a.xi, a.order, kind};
    e = a.rewritten ? legendre::eval_bessel_form(cp)
                    : legendre::eval_legendre(legendre::to_legendre_params(cp));
  } else {
    if (a.rewritten) throw UsageError("--rewritten needs --theta and --lambda");
    if (!a.gamma || !a.x) throw UsageError("--gamma and --x are required for the legendre family");
    e = legendre::eval_legendre({a.n, *a.gamma, a.xi, *a.x, a.order, kind});
  }
  if (e.small_gamma) err << "warning: gamma below " << legendre::kSmallGamma << ", coefficient values lose digits\n";
  if (a.json_out) {
    json doc;
    emit_terms(doc, e);
    doc["v"] = e.v;
    doc["S"] = e.S;
    doc["mu"] = {{"re", e.mu.real()}, {"im", e.mu.imag()}};
    out << doc.dump(2) << "\n";
  } else {
    print_text(out, e);
    out << "v = " << g17(e.v) << "\nS = " << g17(e.S) << "\nmu = " << g17(e.mu.real()) << " + "
        << g17(e.mu.imag()) << "i\n";
  }
  return kOk;
}

// --------------------------------------------------------------- coeffs

struct CoeffArgs {
  std::string family;
  int k = 0;
  std::string g = "1";
  std::string zeta = "-1/8";
  std::string format = "json";
  bool plus = false;
  bool bar = false;
};

int cmd_coeffs(const CoeffArgs& a, std::ostream& out) {
  if (a.k < 0) throw UsageError("--k must be non-negative");
  kernel::CoeffExpr expr = [&] {
    if (a.family == "bessel") {
      if (a.plus) throw UsageError("--plus applies to the legendre family only");
      if (a.k > bessel::kMaxOrder) {
        throw DomainError("order exceeds K_max = " + std::to_string(bessel::kMaxOrder));
      }
      return a.bar ? bessel::omega_bar(a.k) : bessel::omega(a.k);
    }
    const auto g = kernel::parse_rational(a.g);
    const auto zeta = kernel::parse_rational(a.zeta);
    const auto set = legendre::coefficients(g, zeta, a.k);
    if (a.plus) return a.bar ? set->psi_bar_plus[a.k] : set->psi_plus[a.k];
    return a.bar ? set->psi_bar[a.k] : set->psi[a.k];
  }();
  if (a.format == "json") {
    out << kernel::to_json(expr).dump(2) << "\n";
  } else {
    out << expr.to_text() << "\n";
  }
  return kOk;
}

// --------------------------------------------------------------- errtable

struct ErrTableArgs {
  double theta = 0.1;
  double xi = 0.0;
  int n = 4;
  double lambda_min = 0.5;
  double lambda_max = 10.0;
  int steps = 20;
  std::vector<int> orders{0, 1, 2, 3};
  std::string out_path;
};

int cmd_errtable(const ErrTableArgs& a, std::ostream& out, std::ostream& err) {
  if (a.steps < 1) throw UsageError("--steps must be at least 1");
  if (!(a.lambda_min > 0) || a.lambda_max < a.lambda_min) throw DomainError("need 0 < lambda-min <= lambda-max");
  for (int m : a.orders) check_order(m);

  const auto cfg = oracle::OracleConfig::from_env();
  const double x = std::cos(a.theta);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::ostringstream csv;
  csv << "lambda,m,rel_err_p,rel_err_q\n";
  int failures = 0;
  for (int i = 0; i < a.steps; ++i) {
    const double lambda =
        a.steps == 1 ? a.lambda_min : a.lambda_min + (a.lambda_max - a.lambda_min) * i / (a.steps - 1);
    const double gamma = lambda / std::sin(a.theta);
    double p_ref = nan, q_ref = nan;
    try {
      p_ref = oracle::p_reference(a.n, gamma, a.xi, x, cfg).value_d();
      q_ref = oracle::q_reference(a.n, gamma, a.xi, x, cfg).value_d();
    } catch (const std::exception& e) {
      err << "oracle failed at lambda = " << g17(lambda) << ": " << e.what() << "\n";
      ++failures;
      p_ref = q_ref = nan;
    }
    for (int m : a.orders) {
      legendre::LegendreParams lp{a.n, gamma, a.xi, x, m, legendre::Kind::p};
      const double p = legendre::eval_legendre(lp).value;
      lp.kind = legendre::Kind::q;
      const double q = legendre::eval_legendre(lp).value;
      csv << g17(lambda) << "," << m << "," << g17((p_ref - p) / p_ref) << "," << g17((q_ref - q) / q_ref)
          << "\n";
    }
  }
  if (a.out_path.empty()) {
    out << csv.str();
  } else {
    std::ofstream file(a.out_path, std::ios::binary);
    if (!file) throw UsageError("cannot open " + a.out_path);
    file << csv.str();
  }
  return failures == 0 ? kOk : kDomainFailure;
}

// --------------------------------------------------------------- check

int cmd_check(const std::string& suite, bool json_out, std::ostream& out) {
  const auto results = checks::run_suite(suite);
  bool all = true;
  json doc = json::array();
  for (const auto& r : results) {
    all = all && r.pass;
    if (json_out) {
      doc.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    } else {
      out << r.name << ": " << (r.pass ? "pass" : "fail") << "  # " << r.detail << "\n";
    }
  }
  if (json_out) out << doc.dump(2) << "\n";
  return all ? kOk : kDomainFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Uniform large-order expansions of Legendre and modified Bessel functions", "unifexp"};
  app.require_subcommand(1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate a truncated expansion");
  eval->add_option("--family", ev.family)->required()->check(CLI::IsMember({"bessel", "legendre"}));
  eval->add_option("--kind", ev.kind, "I, K, dI, dK or p, q, dp, dq")->required();
  eval->add_option("--n", ev.n)->required();
  eval->add_option("--lambda", ev.lambda);
  eval->add_option("--gamma", ev.gamma);
  eval->add_option("--xi", ev.xi);
  eval->add_option("--x", ev.x);
  eval->add_option("--theta", ev.theta, "angle form: x = cos(theta), gamma = lambda/sin(theta)");
  eval->add_option("--order", ev.order);
  eval->add_flag("--json", ev.json_out);
  eval->add_flag("--rewritten", ev.rewritten, "Bessel-like arrangement (needs --theta)");

  CoeffArgs co;
  auto* coeffs = app.add_subcommand("coeffs", "Print an exact expansion coefficient");
  coeffs->add_option("--family", co.family)->required()->check(CLI::IsMember({"bessel", "legendre"}));
  coeffs->add_option("--k", co.k)->required();
  coeffs->add_option("--g", co.g, "gamma^2 as p/q");
  coeffs->add_option("--zeta", co.zeta, "xi - 1/8 as p/q");
  coeffs->add_option("--format", co.format)->check(CLI::IsMember({"json", "text"}));
  coeffs->add_flag("--plus", co.plus, "Stirling-shifted coefficient");
  coeffs->add_flag("--bar", co.bar, "derivative coefficient");

  ErrTableArgs et;
  auto* errtable = app.add_subcommand("errtable", "Relative errors of p and q against the oracle, as CSV");
  errtable->add_option("--theta", et.theta);
  errtable->add_option("--xi", et.xi);
  errtable->add_option("--n", et.n);
  errtable->add_option("--lambda-min", et.lambda_min);
  errtable->add_option("--lambda-max", et.lambda_max);
  errtable->add_option("--steps", et.steps, "number of lambda values, evenly spaced");
  errtable->add_option("--orders", et.orders)->delimiter(',');
  errtable->add_option("--out", et.out_path);

  std::string suite = "all";
  bool check_json = false;
  auto* check = app.add_subcommand("check", "Run invariant suites");
  check->add_option("--suite", suite)->check(CLI::IsMember({"kernel", "bessel", "legendre", "oracle", "all"}));
  check->add_flag("--json", check_json);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(ev, out, err);
    if (coeffs->parsed()) return cmd_coeffs(co, out);
    if (errtable->parsed()) return cmd_errtable(et, out, err);
    return cmd_check(suite, check_json, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IntegrityError& e) {
    err << "integrity error: " << e.what() << "\n";
    return kIntegrity;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
}

}  // namespace unifexp::cli
