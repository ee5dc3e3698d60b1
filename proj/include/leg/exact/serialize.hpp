#pragma once

// JSON forms: polynomials as arrays of "num/den" strings in ascending degree,
// rational functions as {"num": poly, "den": poly}, function-field elements as
// {"a": ratfunc, "b": ratfunc, "modulus": poly}.

#include "json.hpp"
#include "leg/exact/ffelement.hpp"

namespace leg {

nlohmann::json to_json(const QPoly& p);
nlohmann::json to_json(const ZPoly& p);
nlohmann::json to_json(const RatFunc& r);
nlohmann::json to_json(const FFElement& x);

QPoly qpoly_from_json(const nlohmann::json& j);
RatFunc ratfunc_from_json(const nlohmann::json& j);
FFElement ffelement_from_json(const nlohmann::json& j);

}  // namespace leg
