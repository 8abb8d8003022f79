#include <doctest.h>

#include "bw/polynomial.hpp"
#include "bw/rng.hpp"
#include "bw/roots.hpp"

using namespace bw;

using RP = Poly<Rational>;
using CP = Poly<Cplx>;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

// independent cofactor oracles for the Wronskian determinants
RP det2(const RP& a, const RP& b, const RP& c, const RP& d) { return a * d - b * c; }

RP det3(const std::vector<std::vector<RP>>& m) {
    return m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2]) -
           m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2]) +
           m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1]);
}

RP wronskian3_oracle(const RP& f1, const RP& f2, const RP& f3) {
    std::vector<std::vector<RP>> m = {
        {f1, f2, f3},
        {derivative(f1), derivative(f2), derivative(f3)},
        {derivative(derivative(f1)), derivative(derivative(f2)), derivative(derivative(f3))}};
    return det3(m);
}

// resultant oracle for monic f: prod g(alpha_i) over the roots of f
Rational resultant_root_oracle(const std::vector<Rational>& f_roots, const RP& g) {
    Rational acc = 1;
    for (const auto& r : f_roots) acc *= g.eval(r);
    return acc;
}

} // namespace

TEST_CASE("wronskian2 pinned values") {
    RP x = RP::x();
    RP x2 = x * x;
    // f = x, g = x^2 -> x^2
    CHECK(wronskian2(x, x2) == x2);
    // f = x - 1/2, g = x^2 - x + 1/2 -> x^2 - x   (hand expansion of F'G - FG')
    RP f = RP(std::vector<Rational>{q(-1, 2), q(1)});
    RP g = RP(std::vector<Rational>{q(1, 2), q(-1), q(1)});
    RP expected = x2 - x;
    CHECK(wronskian2(f, g) == expected);
    // f = 1, g = x -> 1
    CHECK(wronskian2(RP::constant(q(1)), x) == RP::constant(q(1)));
}

TEST_CASE("wronskian2 rejects proportional inputs") {
    RP x = RP::x();
    RP f = RP(std::vector<Rational>{q(1), q(2)});
    RP g = q(3) * f;
    CHECK_THROWS_AS(wronskian2(f, g), ProportionalInputs);
    CHECK_THROWS_AS(wronskian2(x, x), ProportionalInputs);
}

TEST_CASE("wronskian2 basis invariance: w(f, g) == w(f, g + c f)") {
    Rng rng(42);
    RP x = RP::x();
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> fc, gc;
        for (int i = 0; i <= 2; ++i) fc.push_back(q(rng.uniform_int(-5, 5)));
        for (int i = 0; i <= 4; ++i) gc.push_back(q(rng.uniform_int(-5, 5)));
        fc.push_back(q(1));
        gc.push_back(q(1));
        RP f(fc), g(gc);
        Rational c = q(rng.uniform_int(-7, 7), rng.uniform_int(1, 5));
        RP g2 = g + c * f;
        CHECK(wronskian2(f, g) == wronskian2(f, g2));
    }
}

TEST_CASE("wronskian_p pinned values and cofactor oracle") {
    RP one = RP::constant(q(1));
    RP x = RP::x();
    RP x2 = x * x;
    RP x3 = x2 * x;
    CHECK(wronskian_p<Rational>({one, x, x2}) == one);
    CHECK(wronskian_p<Rational>({x, x2}) == x2);
    // [x^3, x, 1]: cofactor oracle gives det = -6x, so the monic Wronskian is x
    RP oracle = wronskian3_oracle(x3, x, one);
    CHECK(oracle == q(-6) * x);
    CHECK(wronskian_p<Rational>({x3, x, one}) == monic(oracle));
    CHECK_THROWS_AS(wronskian_p<Rational>({x, q(2) * x}), DependentInputs);
}

TEST_CASE("wronskian_p invariant under invertible recombination") {
    Rng rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        RP x = RP::x();
        RP f1 = RP(std::vector<Rational>{q(rng.uniform_int(-4, 4)), q(1)});
        RP f2 = RP(std::vector<Rational>{q(rng.uniform_int(-4, 4)), q(rng.uniform_int(-4, 4)), q(1)});
        RP f3 = RP(std::vector<Rational>{q(rng.uniform_int(-4, 4)), q(rng.uniform_int(-4, 4)),
                                         q(rng.uniform_int(-4, 4)), q(0), q(1)});
        RP w = wronskian_p<Rational>({f1, f2, f3});
        // unimodular-ish recombination
        RP g1 = f1;
        RP g2 = f2 + q(rng.uniform_int(-3, 3)) * f1;
        RP g3 = f3 + q(rng.uniform_int(-3, 3)) * f2 + q(rng.uniform_int(-3, 3)) * f1;
        CHECK(wronskian_p<Rational>({g3, g1, g2}) == w);
    }
}

TEST_CASE("resultant pinned values (documented Sylvester convention)") {
    RP x = RP::x();
    // Res(x - a, x - b) = a - b with f-rows-first convention: a=2, b=3 -> -1
    RP fa = x - RP::constant(q(2));
    RP fb = x - RP::constant(q(3));
    CHECK(resultant(fa, fb) == q(-1));
    // Res(x^2 - x, x - 1/2) = -1/4
    RP f = x * x - x;
    RP g = x - RP::constant(q(1, 2));
    CHECK(resultant(f, g) == q(-1, 4));
    // Res(f, 1) = 1
    CHECK(resultant(f, RP::constant(q(1))) == q(1));
}

TEST_CASE("resultant equals the root-product oracle") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Rational> roots;
        int deg = 1 + (int)rng.uniform_int(0, 3);
        for (int i = 0; i < deg; ++i) roots.push_back(q(rng.uniform_int(-6, 6), rng.uniform_int(1, 3)));
        RP f = from_roots(roots);
        std::vector<Rational> gc;
        int dg = 1 + (int)rng.uniform_int(0, 3);
        for (int i = 0; i < dg; ++i) gc.push_back(q(rng.uniform_int(-5, 5)));
        gc.push_back(q(rng.uniform_int(1, 4)));
        RP g(gc);
        CHECK(resultant(f, g) == resultant_root_oracle(roots, g));
    }
}

TEST_CASE("resultant vanishes iff common root") {
    RP f = from_roots<Rational>({q(1), q(2)});
    RP g = from_roots<Rational>({q(2), q(5)});
    RP h = from_roots<Rational>({q(3), q(5)});
    CHECK(resultant(f, g) == q(0));
    CHECK(resultant(f, h) != q(0));
}

TEST_CASE("discriminant pinned values and product oracle") {
    RP x = RP::x();
    CHECK(discriminant(x - RP::constant(q(17, 3))) == q(1));
    CHECK(discriminant(x * x - RP::constant(q(1))) == q(4));
    CHECK(discriminant(x * x) == q(0));

    Rng rng(13);
    for (int trial = 0; trial < 15; ++trial) {
        int deg = 2 + (int)rng.uniform_int(0, 3);
        std::vector<Rational> roots;
        for (int i = 0; i < deg; ++i) roots.push_back(q(rng.uniform_int(-8, 8), rng.uniform_int(1, 3)));
        RP f = from_roots(roots);
        Rational oracle = 1;
        for (int i = 0; i < deg; ++i)
            for (int j = i + 1; j < deg; ++j) {
                Rational d = roots[i] - roots[j];
                oracle *= d * d;
            }
        CHECK(discriminant(f) == oracle);
    }
}

TEST_CASE("complex roots: pinned values") {
    CP x = CP::x();
    CP f = x * x - x; // roots 0, 1
    auto r = roots(f);
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0] - Cplx(0.0)) < 1e-10);
    CHECK(std::abs(r[1] - Cplx(1.0)) < 1e-10);

    CP g = x * x + CP::constant(Cplx(1.0)); // roots +-i
    auto ri = roots(g);
    REQUIRE(ri.size() == 2);
    CHECK(std::abs(ri[0] - Cplx(0.0, -1.0)) < 1e-10);
    CHECK(std::abs(ri[1] - Cplx(0.0, 1.0)) < 1e-10);

    // (x - 1/2)^2: multiplicity 2 reported at the cluster centroid
    CP lin(std::vector<Cplx>{Cplx(-0.5), Cplx(1.0)});
    auto rd = roots(lin * lin);
    REQUIRE(rd.size() == 2);
    CHECK(rd[0] == rd[1]);
    CHECK(std::abs(rd[0] - Cplx(0.5)) < 1e-5);
}

TEST_CASE("roots/from_roots roundtrip property") {
    Rng rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + (int)rng.uniform_int(0, 7);
        std::vector<Cplx> t;
        while ((int)t.size() < n) {
            Cplx c = rng.disk(3.0);
            bool ok = true;
            for (const Cplx& u : t) ok = ok && std::abs(u - c) >= 1e-3;
            if (ok) t.push_back(c);
        }
        CP f = from_roots(t);
        auto r = roots(f);
        REQUIRE(r.size() == t.size());
        std::sort(t.begin(), t.end(), [](const Cplx& a, const Cplx& b) {
            if (a.real() != b.real()) return a.real() < b.real();
            return a.imag() < b.imag();
        });
        for (size_t i = 0; i < t.size(); ++i) CHECK(std::abs(t[i] - r[i]) < 1e-8);
    }
}

TEST_CASE("from_roots trivial cases") {
    CHECK(from_roots<Rational>({}) == RP::constant(q(1)));
    CHECK(from_roots<Rational>({q(1, 2)}) == RP(std::vector<Rational>{q(-1, 2), q(1)}));
    CHECK(from_roots<Rational>({q(0), q(1)}) == RP::x() * RP::x() - RP::x());
}

TEST_CASE("divmod and shift") {
    RP x = RP::x();
    RP a = (x * x - x) * (x - RP::constant(q(1, 2))) + RP::constant(q(3));
    auto [quo, rem] = divmod(a, x * x - x);
    CHECK(quo == x - RP::constant(q(1, 2)));
    CHECK(rem == RP::constant(q(3)));

    RP p = x * x * x - q(2) * x;
    RP sh = shift(p, q(1)); // p(1 + y)
    CHECK(sh.eval(q(0)) == p.eval(q(1)));
    CHECK(sh.eval(q(2)) == p.eval(q(3)));
}
