#pragma once

// Dense univariate polynomials over an exact-rational or complex-float
// scalar kind. Coefficients are stored ascending (c[i] multiplies x^i);
// serialization flips to descending at the boundary (json_io).
//
// Degree bookkeeping: the zero polynomial is the empty vector; otherwise
// the leading coefficient is nonzero. In the complex kind arithmetic only
// trims exact zeros; callers that need a numeric degree decision apply
// trim_relative with an explicit threshold.

#include <algorithm>
#include <map>
#include <vector>

#include "bw/errors.hpp"
#include "bw/scalar.hpp"

namespace bw {

template <class K>
struct Poly {
    std::vector<K> c; // ascending powers

    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }

    static Poly zero() { return Poly(); }
    static Poly constant(const K& v) { return Poly(std::vector<K>{v}); }
    static Poly x() { return Poly(std::vector<K>{K(0), K(1)}); }

    // highest-first convenience for tests: Poly<K>::desc({1, -3, 2}) = x^2 - 3x + 2
    static Poly desc(std::vector<K> coeffs) {
        std::reverse(coeffs.begin(), coeffs.end());
        return Poly(std::move(coeffs));
    }

    bool is_zero_poly() const { return c.empty(); }
    int degree() const { return (int)c.size() - 1; } // -1 for zero

    const K& lc() const {
        if (c.empty()) throw ZeroPolynomial("leading coefficient of zero polynomial");
        return c.back();
    }

    K coeff(int i) const { return (i >= 0 && i < (int)c.size()) ? c[i] : K(0); }

    void trim() {
        while (!c.empty() && is_zero(c.back())) c.pop_back();
    }

    K eval(const K& x) const {
        K r(0);
        for (int i = (int)c.size() - 1; i >= 0; --i) r = r * x + c[i];
        return r;
    }

    double max_abs() const {
        double m = 0;
        for (const K& v : c) m = std::max(m, approx_abs(v));
        return m;
    }
};

template <class K>
Poly<K> operator+(const Poly<K>& a, const Poly<K>& b) {
    std::vector<K> r(std::max(a.c.size(), b.c.size()), K(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] + b.c[i];
    return Poly<K>(std::move(r));
}

template <class K>
Poly<K> operator-(const Poly<K>& a, const Poly<K>& b) {
    std::vector<K> r(std::max(a.c.size(), b.c.size()), K(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] = r[i] + a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] = r[i] - b.c[i];
    return Poly<K>(std::move(r));
}

template <class K>
Poly<K> operator-(const Poly<K>& a) {
    std::vector<K> r = a.c;
    for (K& v : r) v = -v;
    return Poly<K>(std::move(r));
}

template <class K>
Poly<K> operator*(const Poly<K>& a, const Poly<K>& b) {
    if (a.is_zero_poly() || b.is_zero_poly()) return Poly<K>();
    std::vector<K> r(a.c.size() + b.c.size() - 1, K(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = r[i + j] + a.c[i] * b.c[j];
    return Poly<K>(std::move(r));
}

template <class K>
Poly<K> operator*(const K& s, const Poly<K>& a) {
    std::vector<K> r = a.c;
    for (K& v : r) v = v * s;
    return Poly<K>(std::move(r));
}

template <class K>
bool operator==(const Poly<K>& a, const Poly<K>& b) {
    return a.c == b.c;
}

template <class K>
Poly<K> derivative(const Poly<K>& a) {
    if (a.c.size() <= 1) return Poly<K>();
    std::vector<K> r(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r[i - 1] = K((long)i) * a.c[i];
    return Poly<K>(std::move(r));
}

template <class K>
Poly<K> antiderivative(const Poly<K>& a) {
    if (a.is_zero_poly()) return Poly<K>();
    std::vector<K> r(a.c.size() + 1, K(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i + 1] = a.c[i] / K((long)(i + 1));
    return Poly<K>(std::move(r));
}

template <class K>
Poly<K> monic(const Poly<K>& a) {
    if (a.is_zero_poly()) throw ZeroPolynomial("monic normalization");
    K inv = a.lc();
    std::vector<K> r = a.c;
    for (K& v : r) v = v / inv;
    r.back() = K(1); // exact in both kinds
    return Poly<K>(std::move(r));
}

// quotient and remainder; K is a field so this is exact for rationals
template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
    if (b.is_zero_poly()) throw ZeroPolynomial("division by zero polynomial");
    std::vector<K> rem = a.c;
    int db = b.degree();
    if (a.degree() < db) return {Poly<K>(), a};
    std::vector<K> quo(a.degree() - db + 1, K(0));
    for (int i = a.degree(); i >= db; --i) {
        K f = rem[i] / b.c[db];
        quo[i - db] = f;
        if (!is_zero(f))
            for (int j = 0; j <= db; ++j) rem[i - db + j] = rem[i - db + j] - f * b.c[j];
        rem[i] = K(0);
    }
    return {Poly<K>(std::move(quo)), Poly<K>(std::move(rem))};
}

template <class K>
Poly<K> from_roots(const std::vector<K>& roots) {
    Poly<K> p = Poly<K>::constant(K(1));
    for (const K& t : roots) p = p * Poly<K>(std::vector<K>{-t, K(1)});
    return p;
}

// Taylor shift: p(x0 + y) as a polynomial in y.
template <class K>
Poly<K> shift(const Poly<K>& p, const K& x0) {
    Poly<K> res;
    Poly<K> lin(std::vector<K>{x0, K(1)});
    for (int i = p.degree(); i >= 0; --i) {
        res = res * lin;
        res = res + Poly<K>::constant(p.c[i]);
    }
    return res;
}

// drop leading coefficients below rel * max|coeff|; complex-kind degree decisions
inline Poly<Cplx> trim_relative(Poly<Cplx> p, double rel) {
    double scale = p.max_abs();
    if (scale == 0) return Poly<Cplx>();
    while (!p.c.empty() && std::abs(p.c.back()) <= rel * scale) p.c.pop_back();
    return p;
}

template <class K>
Poly<Cplx> to_cplx_poly(const Poly<K>& p) {
    std::vector<Cplx> r(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) r[i] = to_cplx(p.c[i]);
    return Poly<Cplx>(std::move(r));
}

// ---------------------------------------------------------------------------
// Wronskians

namespace detail {

// determinant of a square polynomial matrix by Laplace expansion over
// column subsets (rows consumed top to bottom); fine for the l <= 6 we use
template <class K>
Poly<K> poly_matrix_det(const std::vector<std::vector<Poly<K>>>& m) {
    const int l = (int)m.size();
    if (l == 0) return Poly<K>::constant(K(1));
    std::map<unsigned, Poly<K>> memo;
    memo[0] = Poly<K>::constant(K(1)); // no columns used, before row 0
    // state: bitmask of used columns; row index = popcount(mask)
    std::vector<unsigned> order;
    for (unsigned mask = 0; mask < (1u << l); ++mask) order.push_back(mask);
    std::sort(order.begin(), order.end(), [](unsigned a, unsigned b) {
        return __builtin_popcount(a) < __builtin_popcount(b);
    });
    for (unsigned mask : order) {
        if (mask == 0) continue;
        int row = __builtin_popcount(mask) - 1;
        Poly<K> acc;
        int seen = 0;
        for (int col = 0; col < l; ++col) {
            if (!(mask & (1u << col))) continue;
            unsigned sub = mask & ~(1u << col);
            auto it = memo.find(sub);
            if (it != memo.end() && !m[row][col].is_zero_poly() && !it->second.is_zero_poly()) {
                Poly<K> term = m[row][col] * it->second;
                if (seen % 2 == 1) term = -term;
                acc = acc + term;
            }
            ++seen;
        }
        memo[mask] = acc;
    }
    return memo[(1u << l) - 1];
}

} // namespace detail

namespace detail {

// In the complex kind, degree decisions by coefficient magnitude fail for
// polynomials whose coefficients span many orders (monic with large roots).
// When the input degrees are pairwise distinct the Wronskian degree is known
// exactly -- sum d_i - l(l-1)/2, with a nonzero Vandermonde-type leading
// coefficient -- so roundoff above it is truncated structurally.
inline Poly<Cplx> truncate_to_degree(Poly<Cplx> p, int deg) {
    if ((int)p.c.size() > deg + 1) p.c.resize(deg + 1);
    p.trim();
    return p;
}

} // namespace detail

// Monic normalization of f'g - f g'. Errors on proportional inputs.
template <class K>
Poly<K> wronskian2(const Poly<K>& f, const Poly<K>& g) {
    if (f.is_zero_poly() || g.is_zero_poly()) throw ZeroPolynomial("wronskian2");
    Poly<K> d = derivative(f) * g - f * derivative(g);
    if constexpr (!ScalarKind<K>::exact) {
        if (f.degree() != g.degree()) {
            d = detail::truncate_to_degree(d, f.degree() + g.degree() - 1);
        } else {
            double scale = f.max_abs() * g.max_abs() * double(f.degree() + g.degree() + 2);
            d = trim_relative(d, 1e-12 * scale / std::max(d.max_abs(), 1e-300));
        }
    }
    if (d.is_zero_poly()) throw ProportionalInputs("wronskian2: f'g - fg' vanishes");
    return monic(d);
}

// Monic Wronskian of l polynomials (determinant of the derivative matrix).
template <class K>
Poly<K> wronskian_p(const std::vector<Poly<K>>& fs) {
    const int l = (int)fs.size();
    if (l == 0) throw Error("wronskian_p: empty list");
    for (const auto& f : fs)
        if (f.is_zero_poly()) throw DependentInputs("wronskian_p: zero polynomial input");
    std::vector<std::vector<Poly<K>>> m(l, std::vector<Poly<K>>(l));
    for (int col = 0; col < l; ++col) {
        m[0][col] = fs[col];
        for (int row = 1; row < l; ++row) m[row][col] = derivative(m[row - 1][col]);
    }
    Poly<K> d = detail::poly_matrix_det(m);
    if constexpr (!ScalarKind<K>::exact) {
        bool distinct = true;
        int degsum = 0;
        for (int i = 0; i < l; ++i) {
            degsum += fs[i].degree();
            for (int j = i + 1; j < l; ++j) distinct = distinct && fs[i].degree() != fs[j].degree();
        }
        if (distinct) {
            d = detail::truncate_to_degree(d, degsum - l * (l - 1) / 2);
        } else {
            double scale = 1.0;
            for (const auto& f : fs) scale *= std::max(f.max_abs(), 1.0);
            d = trim_relative(d, 1e-10 * scale / std::max(d.max_abs(), 1e-300));
        }
    }
    if (d.is_zero_poly()) throw DependentInputs("wronskian_p: determinant vanishes");
    return monic(d);
}

// ---------------------------------------------------------------------------
// Resultants and discriminants

namespace detail {

// partial-pivot LU determinant for the complex kind
inline Cplx scalar_matrix_det(std::vector<std::vector<Cplx>> m, int n) {
    Cplx det(1.0);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int i = c + 1; i < n; ++i)
            if (std::abs(m[i][c]) > std::abs(m[piv][c])) piv = i;
        if (std::abs(m[piv][c]) == 0.0) return Cplx(0.0);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int i = c + 1; i < n; ++i) {
            Cplx f = m[i][c] / m[c][c];
            for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

} // namespace detail

// defined in exact_linalg.cpp (fraction-free elimination)
Rational exact_determinant(const std::vector<std::vector<Rational>>& m);

// Resultant via the Sylvester determinant, f-rows first, descending
// coefficients: Res(f,g) = lc(f)^{deg g} * prod_i g(alpha_i) over the roots
// of f. Res(f, const c) = c^{deg f}.
template <class K>
K resultant(const Poly<K>& f, const Poly<K>& g) {
    if (f.is_zero_poly() || g.is_zero_poly()) throw ZeroPolynomial("resultant");
    const int m = f.degree(), n = g.degree();
    const int size = m + n;
    if (size == 0) return K(1);
    std::vector<std::vector<K>> s(size, std::vector<K>(size, K(0)));
    for (int i = 0; i < n; ++i)        // f-rows
        for (int j = 0; j <= m; ++j) s[i][i + j] = f.c[m - j];
    for (int i = 0; i < m; ++i)        // g-rows
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = g.c[n - j];
    if constexpr (ScalarKind<K>::exact) {
        return exact_determinant(s);
    } else {
        return detail::scalar_matrix_det(s, size);
    }
}

// Disc(f) = (-1)^{m(m-1)/2} Res(f, f') / lc(f); monic prod (x - t_i) gives
// prod_{i<j} (t_i - t_j)^2.
template <class K>
K discriminant(const Poly<K>& f) {
    const int m = f.degree();
    if (m < 1) throw Error("discriminant: degree must be >= 1");
    Poly<K> df = derivative(f);
    if (df.is_zero_poly()) return K(0);
    K r = resultant(f, df);
    K d = r / f.lc();
    if ((m * (m - 1) / 2) % 2 == 1) d = -d;
    return d;
}

} // namespace bw
