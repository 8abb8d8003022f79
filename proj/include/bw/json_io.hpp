#pragma once

// JSON boundary: polynomials serialize with descending coefficients,
// rationals as "p/q" strings, complex numbers as [re, im] pairs.

#include <json.hpp>

#include "bw/polynomial.hpp"

namespace bw {

using Json = nlohmann::json;

Json to_json(const Rational& r);
Json to_json(const Cplx& c);
Json poly_to_json(const Poly<Rational>& p);
Json poly_to_json(const Poly<Cplx>& p);

Rational rational_from_json(const Json& j);
Cplx cplx_from_json(const Json& j);
Poly<Rational> rational_poly_from_json(const Json& j);
Poly<Cplx> cplx_poly_from_json(const Json& j);

} // namespace bw
