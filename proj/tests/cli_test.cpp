#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "unifexp/bessel/uniform.hpp"
#include "unifexp/cli.hpp"
#include "unifexp/kernel/serialize.hpp"
#include "unifexp/legendre/uniform.hpp"

using namespace unifexp;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("Bessel value and terms") {
    const auto r = run({"eval", "--family", "bessel", "--kind", "I", "--n", "4", "--lambda", "2", "--order", "3", "--json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    const auto e = bessel::eval_bessel({4, 2.0, 3, bessel::Kind::I});
    CHECK(doc["value"].get<double>() == e.value);
    CHECK(doc["terms"].size() == 4);
    CHECK(doc["log_scale"].is_null());
  }

  TEST_CASE("Legendre schema and the bare leading term") {
    const auto r = run({"eval", "--family", "legendre", "--kind", "p", "--n", "4", "--gamma", "1", "--xi", "0", "--x",
                        "0.995", "--order", "0", "--json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    for (const char* key : {"value", "log_scale", "terms", "v", "S", "mu"}) CHECK(doc.contains(key));
    CHECK(doc["terms"].size() == 1);
    const double v = doc["v"], S = doc["S"];
    const double leading = std::pow((1 + v * v) / 2, 0.25) * std::exp(4 * S) / 24;
    CHECK(doc["value"].get<double>() == doctest::Approx(leading).epsilon(1e-13));
    CHECK(doc["mu"]["im"].get<double>() == doctest::Approx(std::sqrt(63.0) / 2));
  }

  TEST_CASE("angle form and text output") {
    const auto r = run({"eval", "--family", "legendre", "--kind", "q", "--n", "8", "--lambda", "2", "--theta", "0.1",
                        "--rewritten"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("value = ") == 0);
    CHECK(r.out.find("term[3] = ") != std::string::npos);
  }

  TEST_CASE("large values are returned on a log scale") {
    const auto r = run({"eval", "--family", "bessel", "--kind", "I", "--n", "400", "--lambda", "5", "--json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["value"].is_null());
    CHECK(doc["log_scale"].get<double>() > 700);
  }

  TEST_CASE("exit codes") {
    auto r = run({"eval", "--family", "legendre", "--kind", "p", "--n", "4", "--gamma", "1", "--x", "0.5", "--order", "99"});
    CHECK(r.code == 1);
    CHECK(r.err.find("order exceeds K_max") != std::string::npos);
    CHECK(run({"eval", "--family", "legendre", "--kind", "p", "--n", "4", "--gamma", "1", "--x", "1.2"}).code == 1);
    CHECK(run({"eval", "--family", "spherical", "--kind", "p", "--n", "4"}).code == 2);
    CHECK(run({"eval", "--family", "bessel", "--kind", "Z", "--n", "4", "--lambda", "1"}).code == 2);
    CHECK(run({"eval", "--family", "bessel", "--kind", "I", "--n", "4"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("small gamma warning") {
    const auto r = run({"eval", "--family", "legendre", "--kind", "p", "--n", "4", "--gamma", "0.01", "--x", "0.5"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
  }
}

TEST_SUITE("coeffs") {
  TEST_CASE("psi_1 at g = 1, zeta = -1/8") {
    const auto r = run({"coeffs", "--family", "legendre", "--k", "1", "--g", "1", "--zeta", "-1/8"});
    REQUIRE(r.code == 0);
    const auto expr = kernel::coeff_expr_from_json(nlohmann::ordered_json::parse(r.out));
    CHECK(expr == legendre::psi(1, kernel::Rational(1), kernel::frac(-1, 8)));
    const auto bar = run({"coeffs", "--family", "legendre", "--k", "1", "--bar", "--g", "1", "--zeta", "-1/8"});
    CHECK(kernel::coeff_expr_from_json(nlohmann::ordered_json::parse(bar.out)) ==
          legendre::psi_bar(1, kernel::Rational(1), kernel::frac(-1, 8)));
  }

  TEST_CASE("Debye polynomial as text") {
    const auto r = run({"coeffs", "--family", "bessel", "--k", "2", "--format", "text"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("9/128 * t^2") != std::string::npos);
    CHECK(r.out.find("-77/192 * t^4") != std::string::npos);
    CHECK(r.out.find("385/1152 * t^6") != std::string::npos);
  }

  TEST_CASE("bad input") {
    CHECK(run({"coeffs", "--family", "legendre", "--k", "1", "--g", "x/2"}).code == 2);
    CHECK(run({"coeffs", "--family", "legendre", "--k", "1", "--g", "-1"}).code == 1);
    CHECK(run({"coeffs", "--family", "bessel", "--k", "2", "--plus"}).code == 2);
    CHECK(run({"coeffs", "--family", "bessel", "--k", "2", "--format", "yaml"}).code == 2);
  }
}

TEST_SUITE("errtable") {
  TEST_CASE("header, rows and stability") {
    const std::vector<std::string> args{"errtable", "--theta", "0.1", "--xi", "0", "--n", "4", "--lambda-min", "0.5",
                                        "--lambda-max", "10", "--steps", "2", "--orders", "0,3"};
    const auto a = run(args);
    REQUIRE(a.code == 0);
    std::istringstream lines(a.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "lambda,m,rel_err_p,rel_err_q");
    std::vector<std::vector<double>> rows;
    while (std::getline(lines, line)) {
      std::vector<double> row;
      std::istringstream cells(line);
      for (std::string cell; std::getline(cells, cell, ',');) row.push_back(std::stod(cell));
      rows.push_back(row);
    }
    REQUIRE(rows.size() == 4);
    CHECK(rows[0][0] == 0.5);
    CHECK(rows[3][0] == 10);
    // single lambda: m = 3 beats m = 0
    CHECK(std::abs(rows[1][2]) < std::abs(rows[0][2]));
    CHECK(std::abs(rows[1][3]) < std::abs(rows[0][3]));
    // lambda = 10 beats lambda = 0.5 at the same m
    CHECK(std::abs(rows[3][2]) < std::abs(rows[1][2]));
    CHECK(std::abs(rows[3][3]) < std::abs(rows[1][3]));
    CHECK(run(args).out == a.out);
  }

  TEST_CASE("file output and validation") {
    const std::string path = "errtable_test.csv";
    REQUIRE(run({"errtable", "--steps", "1", "--orders", "0", "--out", path}).code == 0);
    std::ifstream file(path);
    std::string header;
    std::getline(file, header);
    CHECK(header == "lambda,m,rel_err_p,rel_err_q");
    std::remove(path.c_str());
    CHECK(run({"errtable", "--steps", "0"}).code == 2);
    CHECK(run({"errtable", "--orders", "0,9"}).code == 1);
  }
}

TEST_SUITE("check") {
  TEST_CASE("named invariants") {
    const auto legendre = run({"check", "--suite", "legendre"});
    CHECK(legendre.out.find("psi_endpoint_zero: pass") != std::string::npos);
    CHECK(legendre.code == 0);
    const auto kernel = run({"check", "--suite", "kernel"});
    CHECK(kernel.out.find("log_cancellation_k<=6: pass") != std::string::npos);
    CHECK(kernel.code == 0);
    const auto oracle = run({"check", "--suite", "oracle", "--json"});
    const auto doc = nlohmann::json::parse(oracle.out);
    bool found = false;
    for (const auto& item : doc) {
      if (item["name"] == "wronskian_residual<=1e-10") found = item["pass"].get<bool>();
    }
    CHECK(found);
    CHECK(run({"check", "--suite", "everything"}).code == 2);
  }
}
