#pragma once

#include <json.hpp>

#include "unifexp/kernel/coeff_expr.hpp"

namespace unifexp::kernel {

// {"g": "p/q", "zeta": "p/q", "terms": [{"a", "b", "l", "coeff": {"a": "p/q", "b": "p/q"}}]}
// Terms are emitted in canonical monomial order.
nlohmann::ordered_json to_json(const CoeffExpr& expr);

// Inverse of to_json. Malformed input throws UsageError.
CoeffExpr coeff_expr_from_json(const nlohmann::ordered_json& doc, Variable var = Variable::v);

}  // namespace unifexp::kernel
