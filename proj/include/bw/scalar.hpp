#pragma once

// Scalar kinds shared by the whole library: exact rationals (GMP) and
// double-precision complex. Generic code is written against the small
// set of helpers below so the same polynomial / tensor routines run in
// either kind.

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "bw/errors.hpp"

namespace bw {

using BigInt = mpz_class;
using Rational = mpq_class;
using Cplx = std::complex<double>;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "p/q", optional sign.
inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return make_rational(BigInt(s), BigInt(1));
        return make_rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw UsageError("cannot parse rational '" + s + "'");
    }
}

inline std::string rational_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(const Cplx& c) { return c.real() == 0.0 && c.imag() == 0.0; }

// Magnitude estimate used for pivot selection and scale heuristics.
inline double approx_abs(const Rational& r) { return std::fabs(r.get_d()); }
inline double approx_abs(const Cplx& c) { return std::abs(c); }

inline double to_double(const Rational& r) { return r.get_d(); }
inline Cplx to_cplx(const Rational& r) { return Cplx(r.get_d(), 0.0); }
inline Cplx to_cplx(const Cplx& c) { return c; }

template <class K>
struct ScalarKind;

template <>
struct ScalarKind<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";
};

template <>
struct ScalarKind<Cplx> {
    static constexpr bool exact = false;
    static constexpr const char* name = "complex";
};

inline BigInt factorial(unsigned n) {
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

// Binomial with the convention C(a, b) = 0 whenever a < b (negative a
// included); ordinary binomial for a >= b >= 0.
inline BigInt binomial_zero_below(long a, long b) {
    if (a < b || b < 0) return 0;
    BigInt r = 1;
    for (long i = 0; i < b; ++i) {
        r *= (a - i);
        r /= (i + 1);
    }
    return r;
}

inline long checked_to_long(const BigInt& v, const char* what) {
    if (!v.fits_slong_p()) throw Error(std::string(what) + ": value exceeds machine integer range");
    return v.get_si();
}

} // namespace bw
