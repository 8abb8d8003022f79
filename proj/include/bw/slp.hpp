#pragma once

// The sl_p master function for tensor products of symmetric powers of the
// standard module: leveled critical system and solver, the Wronskian tower
// of a p-plane with its degree law, exact singular-vector dimensions as the
// oracle, the plane reconstruction both ways, and the n = 2 Fuchsian
// reduction with indicial exponents.

#include <optional>
#include <vector>

#include "bw/bethe.hpp"
#include "bw/wronski.hpp"

namespace bw {

struct SlpProblem {
    int p = 2;                // rank + 1
    std::vector<int> M;       // weights of Sym^{m_j}(standard)
    std::vector<Cplx> z;      // marked points (empty allowed for dim-only use)
    std::vector<int> k;       // (k_1 >= ... >= k_{p-1} >= 0)

    int n() const { return (int)M.size(); }
    int total() const {
        int s = 0;
        for (int m : M) s += m;
        return s;
    }
    int big_k() const {
        int s = 0;
        for (int v : k) s += v;
        return s;
    }
    // d_l = k_{l-1} - k_l + p - l with k_0 = |M| and k_p = 0
    std::vector<int> plane_type() const;
    int plane_degree() const { return total() - (k.empty() ? 0 : k[0]) + p - 1; }
    void validate(bool need_z) const;
};

using Leveled = std::vector<std::vector<Cplx>>;

struct SlpOrbit {
    Leveled t; // per level, canonical
    double residual = 0;
    double hessian_min_sv = 1;
    double hessian_norm = 1;
};

struct SlpSolveResult {
    std::vector<SlpOrbit> orbits;
    long expected = 0;
    bool complete = false;
    bool excess = false;
    bool budget_exhausted = false;
    long starts_used = 0;
};

Cplx slp_master_value(const SlpProblem& prob, const Leveled& t);

// Disc/Res generating-function form, documented signs:
// prod_l Disc(W_l) * (-1)^{k_1 |M|} / (Res(W, W_1) prod_{l>=2} Res(W_{l-1}, W_l))
Cplx slp_master_disc_res(const SlpProblem& prob, const Leveled& t);

// minus the gradient of log of the master function (level-1 components
// reduce to the sl2 Bethe system when the higher k vanish)
Leveled slp_residual(const SlpProblem& prob, const Leveled& t);

// dimension of Sing_k: exact joint kernel of the p-1 simple raising
// operators on the weight block of (x)_j Sym^{m_j}(C^p)
long slp_dim_sing(const SlpProblem& prob, long block_cap = 2000);

SlpSolveResult slp_solve_orbits(const SlpProblem& prob, const SolverConfig& cfg = {});

// Wronskian tower Wr_l = Wr[P_{l+1}, ..., P_p], monic, with the degree law
template <class K>
struct WrTower {
    std::vector<Poly<K>> levels;    // levels[l] = Wr_l, l = 0..p-1
    std::vector<int> expected_degrees; // k_l from the degree law
    bool nondegenerate = true;      // adjacent levels coprime
};

WrTower<Rational> wr_tower(const PolyPlane<Rational>& V);
WrTower<Cplx> wr_tower(const PolyPlane<Cplx>& V, double root_sep = 1e-6);

// orbit -> plane: P_p from the top level, then one linear solve per level
PolyPlane<Cplx> slp_plane_from_orbit(const SlpProblem& prob, const SlpOrbit& orbit);

// plane -> orbit: roots of the tower levels
SlpOrbit slp_orbit_from_plane(const PolyPlane<Cplx>& V, const SlpProblem& prob);

// ---------------------------------------------------------------------------
// n = 2 Fuchsian reduction  (z = (0,1), W = x^{m1} (x-1)^{m2})

struct FuchsianForm {
    Rational A, B, C;                      // x(x-1) u^(p) + (Ax+B) u^(p-1) + C u^(p-2) = 0
    std::vector<Poly<Rational>> reduced;   // reduced[r] = coefficient of u^(r), normalized
};

FuchsianForm fuchsian_reduce(const PolyPlane<Rational>& V, int m1, int m2);

// indicial polynomial of an ODE sum_r ode[r] u^(r) at a regular singular
// point x0, as an exact polynomial in the exponent variable
Poly<Rational> indicial_polynomial(const std::vector<Poly<Rational>>& ode, const Rational& x0);

// monic degree-k solution of the n = 2 hypergeometric-type equation
// x(x-1) F'' - ((m1+m2) x - m1) F' + k(m1+m2-k+1) F = 0 (exact recurrence);
// its roots solve the sl2 Bethe system for z = (0,1)
Poly<Rational> hypergeometric_bethe_polynomial(int m1, int m2, int k);

// exact nondegenerate p-plane for n = 2 from the hypergeometric solution:
// repeated monic antiderivatives extend the 2-plane to a p-plane
PolyPlane<Rational> exact_two_point_plane(int p, int m1, int m2, int k1);

} // namespace bw
