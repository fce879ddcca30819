#include "unifexp/kernel/serialize.hpp"

#include <string>

#include "unifexp/errors.hpp"

namespace unifexp::kernel {

nlohmann::ordered_json to_json(const CoeffExpr& expr) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [m, c] : expr.terms()) {
    terms.push_back({{"a", m.a},
                     {"b", m.b},
                     {"l", m.l},
                     {"coeff",
                      {{"a", to_canonical_string(c.rational_part())},
                       {"b", to_canonical_string(c.gamma_part())}}}});
  }
  return {{"g", to_canonical_string(expr.field()->g())},
          {"zeta", to_canonical_string(expr.zeta())},
          {"terms", std::move(terms)}};
}

namespace {

Rational rational_field(const nlohmann::ordered_json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_string()) {
    throw UsageError(std::string("missing rational string field '") + key + "'");
  }
  return parse_rational(obj.at(key).get<std::string>());
}

int exponent_field(const nlohmann::ordered_json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number_integer()) {
    throw UsageError(std::string("missing integer field '") + key + "'");
  }
  const int value = obj.at(key).get<int>();
  if (value < 0) throw UsageError(std::string("negative exponent '") + key + "'");
  return value;
}

}  // namespace

CoeffExpr coeff_expr_from_json(const nlohmann::ordered_json& doc, Variable var) {
  const FieldPtr field = QuadraticField::make(rational_field(doc, "g"));
  CoeffExpr out(field, rational_field(doc, "zeta"), var);
  if (!doc.contains("terms") || !doc.at("terms").is_array()) {
    throw UsageError("missing 'terms' array");
  }
  for (const auto& term : doc.at("terms")) {
    if (!term.is_object() || !term.contains("coeff")) throw UsageError("malformed term");
    const Monomial m{exponent_field(term, "a"), exponent_field(term, "b"), exponent_field(term, "l")};
    const auto& c = term.at("coeff");
    out.add_term(m, ExactScalar(field, rational_field(c, "a"), rational_field(c, "b")));
  }
  return out;
}

}  // namespace unifexp::kernel
