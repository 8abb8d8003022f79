#include <doctest.h>

#include "bw/rng.hpp"
#include "bw/schubert.hpp"
#include "bw/slp.hpp"

using namespace bw;

using RP = Poly<Rational>;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

SlpProblem p3_instance() {
    SlpProblem prob;
    prob.p = 3;
    prob.M = {1, 1};
    prob.z = {Cplx(0.0), Cplx(1.0)};
    prob.k = {1, 1};
    return prob;
}

} // namespace

TEST_CASE("slp master value: direct substitution example") {
    SlpProblem prob = p3_instance();
    Leveled t{{Cplx(2.0)}, {Cplx(3.0)}};
    // (2-3)^{-1} (2-0)^{-1} (2-1)^{-1} = -1/2
    CHECK(std::abs(slp_master_value(prob, t) - Cplx(-0.5)) < 1e-15);
    CHECK_THROWS_AS(slp_master_value(prob, Leveled{{Cplx(0.0)}, {Cplx(3.0)}}), OnDiagonal);
}

TEST_CASE("slp master value: reduction to the sl2 master function") {
    SlpProblem prob;
    prob.p = 3;
    prob.M = {2, 2};
    prob.z = {Cplx(0.5), Cplx(-1.0)};
    prob.k = {2, 0};
    MasterProblem sl2{prob.M, prob.z, 2};
    Leveled t{{Cplx(2.0, 1.0), Cplx(-3.0, 0.5)}, {}};
    Cplx a = slp_master_value(prob, t);
    Cplx b = master_value(sl2, t[0]);
    CHECK(std::abs(a - b) < 1e-14 * std::abs(b));
}

TEST_CASE("slp master value agrees with the Disc/Res form") {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        SlpProblem prob;
        prob.p = 2 + (int)rng.uniform_int(0, 2);
        int n = 2 + (int)rng.uniform_int(0, 1);
        for (int j = 0; j < n; ++j) prob.M.push_back(1 + (int)rng.uniform_int(0, 2));
        auto zi = rng.distinct_ints(n, -6, 6);
        for (long v : zi) prob.z.push_back(Cplx((double)v));
        int kmax = prob.total() / 2;
        int k1 = std::min(kmax, 1 + (int)rng.uniform_int(0, 2));
        prob.k.assign(prob.p - 1, 0);
        prob.k[0] = k1;
        if (prob.p >= 3 && k1 >= 1) prob.k[1] = (int)rng.uniform_int(0, std::min(k1, 2));
        for (int l = 2; l < prob.p - 1; ++l) prob.k[l] = 0;
        int K = prob.big_k();
        if (K > 6 || K == 0) continue;

        Leveled t(prob.p - 1);
        bool clear = true;
        for (int l = 0; l < prob.p - 1; ++l)
            for (int i = 0; i < prob.k[l]; ++i) t[l].push_back(rng.disk(4.0) + Cplx(0.3, 0.7));
        for (int l = 0; l < prob.p - 1 && clear; ++l)
            for (size_t i = 0; i < t[l].size() && clear; ++i) {
                for (size_t j = i + 1; j < t[l].size(); ++j) clear = clear && std::abs(t[l][i] - t[l][j]) > 0.15;
                if (l + 1 < prob.p - 1)
                    for (const Cplx& u : t[l + 1]) clear = clear && std::abs(t[l][i] - u) > 0.15;
                for (const Cplx& zz : prob.z) clear = clear && std::abs(t[l][i] - zz) > 0.15;
            }
        if (!clear) continue;
        Cplx direct = slp_master_value(prob, t);
        Cplx via = slp_master_disc_res(prob, t);
        CHECK(std::abs(direct - via) < 1e-10 * std::abs(direct));
    }
}

TEST_CASE("slp residual: reduction and derivative oracle") {
    SlpProblem prob;
    prob.p = 3;
    prob.M = {1, 2, 1};
    prob.z = {Cplx(0.0), Cplx(1.0), Cplx(-2.0)};
    prob.k = {2, 1};

    // reduction: k = (2, 0) level-1 residual equals the sl2 residual
    SlpProblem red = prob;
    red.k = {2, 0};
    Leveled t2{{Cplx(2.0, 1.0), Cplx(-1.0, 0.4)}, {}};
    Leveled r2 = slp_residual(red, t2);
    MasterProblem sl2{prob.M, prob.z, 2};
    auto rb = bethe_residual(sl2, t2[0]);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(r2[0][i] - rb[i]) < 1e-14);

    // central differences of log of the master function
    Leveled t{{Cplx(2.0, 1.0), Cplx(-1.0, 0.4)}, {Cplx(0.5, -1.2)}};
    Leveled r = slp_residual(prob, t);
    const double h = 1e-6;
    for (int l = 0; l < 2; ++l) {
        for (size_t i = 0; i < t[l].size(); ++i) {
            Leveled tp = t, tm = t;
            tp[l][i] += h;
            tm[l][i] -= h;
            Cplx fd = std::log(slp_master_value(prob, tp) / slp_master_value(prob, tm)) / (2.0 * h);
            CHECK(std::abs(fd + r[l][i]) < 1e-8 * (1.0 + std::abs(r[l][i])));
        }
    }
}

TEST_CASE("slp_dim_sing: p = 2 reduction, sl3 instances, Schubert cross-check") {
    // p = 2 agrees with the closed formula
    for (int m1 = 1; m1 <= 3; ++m1)
        for (int m2 = 1; m2 <= 3; ++m2)
            for (int k = 0; 2 * k <= m1 + m2; ++k) {
                SlpProblem prob;
                prob.p = 2;
                prob.M = {m1, m2};
                prob.k = {k};
                CHECK(BigInt(slp_dim_sing(prob)) == dim_sing_formula({{m1, m2}, k}));
            }

    // sl3 statements from the Pieri discussion
    SlpProblem a;
    a.p = 3;
    a.M = {1, 1};
    a.k = {1, 0};
    CHECK(slp_dim_sing(a) == 1);
    a.k = {1, 1};
    CHECK(slp_dim_sing(a) == 0);

    SlpProblem b;
    b.p = 3;
    b.M = {1, 1, 1};
    b.k = {1, 0};
    CHECK(slp_dim_sing(b) == 2);
    CHECK(slp_upper_bound(b.M, b.k, b.plane_degree(), 3) == 2);
    b.k = {2, 1};
    CHECK(slp_dim_sing(b) == 1);
    CHECK(slp_upper_bound(b.M, b.k, b.plane_degree(), 3) == 1);
}

TEST_CASE("wr_tower: trivial plane, p = 2 reduction, degree law") {
    RP x = RP::x();
    auto triv = canonical_plane<Rational>({x * x, x, RP::constant(q(1))});
    WrTower<Rational> tower = wr_tower(triv);
    for (const auto& lvl : tower.levels) CHECK(lvl == RP::constant(q(1)));
    CHECK(tower.expected_degrees == std::vector<int>{0, 0, 0});
    CHECK(tower.nondegenerate);

    // p = 2: tower is (W_V, F)
    auto V2 = canonical_plane<Rational>({x - RP::constant(q(1, 2)),
                                         RP(std::vector<Rational>{q(1, 2), q(-1), q(1)})});
    WrTower<Rational> t2 = wr_tower(V2);
    CHECK(t2.levels[0] == x * x - x);
    CHECK(t2.levels[1] == x - RP::constant(q(1, 2)));

    // degree law on random exact planes
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        int p = 2 + (int)rng.uniform_int(0, 2);
        int d = p + (int)rng.uniform_int(0, 8 - p);
        std::vector<int> degs;
        while ((int)degs.size() < p) {
            int dd = (int)rng.uniform_int(0, d);
            bool dup = false;
            for (int e : degs) dup = dup || e == dd;
            if (!dup) degs.push_back(dd);
        }
        std::sort(degs.rbegin(), degs.rend());
        std::vector<RP> gens;
        for (int deg : degs) {
            std::vector<Rational> c;
            for (int i = 0; i < deg; ++i) c.push_back(q(rng.uniform_int(-5, 5)));
            c.push_back(q(1));
            gens.push_back(RP(std::move(c)));
        }
        PolyPlane<Rational> V;
        try {
            V = canonical_plane<Rational>(gens);
        } catch (const DegeneratePlane&) {
            continue;
        }
        WrTower<Rational> tw = wr_tower(V);
        for (int l = 0; l < p; ++l) CHECK(tw.levels[l].degree() == tw.expected_degrees[l]);
    }
}

TEST_CASE("slp solver: no critical points when dim Sing = 0") {
    SlpProblem prob = p3_instance(); // M = (1,1), k = (1,1): dim 0
    SolverConfig cfg;
    cfg.seed = 12;
    cfg.max_starts = 150;
    SlpSolveResult res = slp_solve_orbits(prob, cfg);
    CHECK(res.expected == 0);
    CHECK(res.orbits.empty());
    CHECK(res.complete);
}

TEST_CASE("slp solver: two orbits and the plane roundtrip") {
    SlpProblem prob;
    prob.p = 3;
    prob.M = {1, 1, 1};
    prob.z = {Cplx(0.0), Cplx(1.0), Cplx(3.0)};
    prob.k = {1, 0};
    SolverConfig cfg;
    cfg.seed = 13;
    SlpSolveResult res = slp_solve_orbits(prob, cfg);
    CHECK(res.expected == 2);
    REQUIRE(res.complete);
    for (const auto& orb : res.orbits) {
        CHECK(orb.residual < 1e-10);
        CHECK(orb.hessian_min_sv > 1e-6 * orb.hessian_norm);
        PolyPlane<Cplx> V = slp_plane_from_orbit(prob, orb);
        CHECK(V.dim() == 3);
        SlpOrbit back = slp_orbit_from_plane(V, prob);
        for (int l = 0; l < 2; ++l) CHECK(orbit_distance(back.t[l], orb.t[l]) < 1e-8);
        PolyPlane<Cplx> V2 = slp_plane_from_orbit(prob, back);
        for (int i = 0; i < 3; ++i) {
            int deg = std::max(V.basis[i].degree(), V2.basis[i].degree());
            for (int c = 0; c <= deg; ++c)
                CHECK(std::abs(V.basis[i].coeff(c) - V2.basis[i].coeff(c)) < 1e-7 *
                      (1.0 + V.basis[i].max_abs()));
        }
    }
    // distinct canonical planes for distinct orbits
    PolyPlane<Cplx> A = slp_plane_from_orbit(prob, res.orbits[0]);
    PolyPlane<Cplx> B = slp_plane_from_orbit(prob, res.orbits[1]);
    double diff = 0;
    for (int i = 0; i < 3; ++i) {
        int deg = std::max(A.basis[i].degree(), B.basis[i].degree());
        for (int c = 0; c <= deg; ++c) diff = std::max(diff, std::abs(A.basis[i].coeff(c) - B.basis[i].coeff(c)));
    }
    CHECK(diff > 1e-3);
}

TEST_CASE("slp solver: K = 3 interior instance") {
    SlpProblem prob;
    prob.p = 3;
    prob.M = {1, 1, 1};
    prob.z = {Cplx(0.0), Cplx(1.0), Cplx(3.0)};
    prob.k = {2, 1};
    SolverConfig cfg;
    cfg.seed = 14;
    SlpSolveResult res = slp_solve_orbits(prob, cfg);
    CHECK(res.expected == 1);
    REQUIRE(res.complete);
    PolyPlane<Cplx> V = slp_plane_from_orbit(prob, res.orbits[0]);
    SlpOrbit back = slp_orbit_from_plane(V, prob);
    for (int l = 0; l < 2; ++l) CHECK(orbit_distance(back.t[l], res.orbits[0].t[l]) < 1e-8);
}

TEST_CASE("hypergeometric polynomial solves the two-point system") {
    CHECK(hypergeometric_bethe_polynomial(1, 1, 1) == RP(std::vector<Rational>{q(-1, 2), q(1)}));
    for (int m1 = 1; m1 <= 3; ++m1)
        for (int m2 = 1; m2 <= m1; ++m2)
            for (int k = 1; k <= m2; ++k) {
                RP F = hypergeometric_bethe_polynomial(m1, m2, k);
                CHECK(F.degree() == k);
                // residue certificate: F' G - F G' = c W has an exact solution
                RP x = RP::x();
                RP W = RP::constant(q(1));
                for (int e = 0; e < m1; ++e) W = W * x;
                for (int e = 0; e < m2; ++e) W = W * (x - RP::constant(q(1)));
                auto G = partner_from_linear_system(W, F, m1 + m2 + 1 - k);
                CHECK(G.has_value());
            }
}

TEST_CASE("fuchsian reduction: p = 2 pinned coefficients") {
    auto V = exact_two_point_plane(2, 1, 1, 1);
    FuchsianForm ff = fuchsian_reduce(V, 1, 1);
    CHECK(ff.A == q(-2));
    CHECK(ff.B == q(1));
    CHECK(ff.C == q(2));
    // both basis polynomials annihilate the ODE exactly
    for (const auto& P : V.basis) {
        RP acc;
        RP der = P;
        for (int r = 0; r < (int)ff.reduced.size(); ++r) {
            acc = acc + ff.reduced[r] * der;
            der = derivative(der);
        }
        CHECK(acc.is_zero_poly());
    }
}

TEST_CASE("fuchsian reduction: p = 3, vanishing u-coefficient and exponents") {
    for (auto [m1, m2, k1] : std::vector<std::tuple<int, int, int>>{{1, 1, 1}, {2, 1, 1}, {2, 2, 1}, {2, 2, 2}, {3, 2, 2}}) {
        auto V = exact_two_point_plane(3, m1, m2, k1);
        FuchsianForm ff = fuchsian_reduce(V, m1, m2);
        CHECK(ff.reduced[0].is_zero_poly()); // coefficient of u vanishes identically
        for (const auto& P : V.basis) {
            RP acc;
            RP der = P;
            for (int r = 0; r < (int)ff.reduced.size(); ++r) {
                acc = acc + ff.reduced[r] * der;
                der = derivative(der);
            }
            CHECK(acc.is_zero_poly());
        }
        // indicial exponents {0, .., p-2, m_i + p - 1} at 0 and at 1
        for (int at = 0; at <= 1; ++at) {
            Poly<Rational> ind = indicial_polynomial(ff.reduced, q(at));
            std::vector<Rational> expect;
            for (int e = 0; e <= 1; ++e) expect.push_back(q(e)); // 0, 1 = 0..p-2
            expect.push_back(q((at == 0 ? m1 : m2) + 2));        // m_i + p - 1
            Poly<Rational> target = from_roots(expect);
            CHECK(monic(ind) == target);
        }
    }
}

TEST_CASE("fuchsian reduction rejects a wrong-Wronskian plane") {
    RP x = RP::x();
    auto V = canonical_plane<Rational>({x * x, x, RP::constant(q(1))});
    CHECK_THROWS_AS(fuchsian_reduce(V, 1, 1), ReductionFailed);
}

TEST_CASE("slp solver with trivial higher levels reduces to the sl2 solver") {
    SlpProblem prob;
    prob.p = 3;
    prob.M = {1, 1, 1};
    prob.z = {Cplx(0.0), Cplx(1.0), Cplx(3.0)};
    prob.k = {1, 0};
    SolverConfig cfg;
    cfg.seed = 21;
    SlpSolveResult leveled = slp_solve_orbits(prob, cfg);
    MasterProblem sl2{prob.M, prob.z, 1};
    SolveResult flat = solve_orbits(sl2, cfg);
    REQUIRE(leveled.complete);
    REQUIRE(flat.complete);
    REQUIRE(leveled.orbits.size() == flat.orbits.size());
    for (size_t i = 0; i < flat.orbits.size(); ++i)
        CHECK(orbit_distance(leveled.orbits[i].t[0], flat.orbits[i].t) < 1e-9);
}
