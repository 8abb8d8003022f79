#include "bw/json_io.hpp"

namespace bw {

Json to_json(const Rational& r) { return rational_to_string(r); }

Json to_json(const Cplx& c) { return Json::array({c.real(), c.imag()}); }

Json poly_to_json(const Poly<Rational>& p) {
    Json coeffs = Json::array();
    for (int i = p.degree(); i >= 0; --i) coeffs.push_back(to_json(p.coeff(i)));
    return Json{{"kind", "rational"}, {"coeffs", coeffs}};
}

Json poly_to_json(const Poly<Cplx>& p) {
    Json coeffs = Json::array();
    for (int i = p.degree(); i >= 0; --i) coeffs.push_back(to_json(p.coeff(i)));
    return Json{{"kind", "complex"}, {"coeffs", coeffs}};
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    throw UsageError("expected a rational (\"p/q\" or integer)");
}

Cplx cplx_from_json(const Json& j) {
    if (j.is_number()) return Cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2) return Cplx(j[0].get<double>(), j[1].get<double>());
    throw UsageError("expected a complex number ([re, im] or real)");
}

namespace {

template <class K, class FromJson>
Poly<K> poly_from_json_impl(const Json& j, const char* kind, FromJson&& from) {
    if (!j.is_object() || j.value("kind", "") != kind || !j.contains("coeffs"))
        throw UsageError(std::string("expected a ") + kind + " polynomial object");
    std::vector<K> coeffs;
    const Json& arr = j["coeffs"];
    for (auto it = arr.rbegin(); it != arr.rend(); ++it) coeffs.push_back(from(*it));
    return Poly<K>(std::move(coeffs));
}

} // namespace

Poly<Rational> rational_poly_from_json(const Json& j) {
    return poly_from_json_impl<Rational>(j, "rational", rational_from_json);
}

Poly<Cplx> cplx_poly_from_json(const Json& j) {
    return poly_from_json_impl<Cplx>(j, "complex", cplx_from_json);
}

} // namespace bw
