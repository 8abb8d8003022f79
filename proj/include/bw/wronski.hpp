#pragma once

// The Wronski map on p-planes of polynomials, both directions of the
// Heine-Stieltjes correspondence between Bethe orbits and planes with a
// prescribed Wronskian, the second-order ODE reconstruction, and the
// rational-curve projection realizing the map.

#include <optional>
#include <vector>

#include "bw/bethe.hpp"
#include "bw/polynomial.hpp"

namespace bw {

// Canonical form: basis of strictly decreasing degrees, each polynomial
// monic, and coefficients at the lower basis degrees reduced to zero
// (column echelon by degree).
template <class K>
struct PolyPlane {
    std::vector<Poly<K>> basis;
    int ambient_degree = 0;

    int order() const { return basis.empty() ? 0 : basis.back().degree(); }
    int degree() const { return basis.empty() ? 0 : basis.front().degree(); }
    int dim() const { return (int)basis.size(); }
};

// Echelon-canonicalize a spanning set. Throws DegeneratePlane if the
// generators are dependent. Generators must carry structurally correct
// degrees (every construction in this library produces monic polynomials
// with exact leading terms); only exact zeros are trimmed, since magnitude
// tests misjudge polynomials whose coefficients span many orders.
template <class K>
PolyPlane<K> canonical_plane(std::vector<Poly<K>> gens);

template <class K>
Poly<K> plane_wronskian(const PolyPlane<K>& V) {
    return wronskian_p(V.basis);
}

// Given W and the smaller-degree polynomial F (monic, simple roots, none
// shared with W), reconstruct the monic partner G with Wr{F, G} = W via the
// exact partial-fraction antiderivative of W/F^2. The simple-pole residues
// are the obstructions; they vanish exactly when the roots of F solve the
// Bethe system.
Poly<Cplx> recover_partner(const Poly<Cplx>& W, const Poly<Cplx>& F, double obstruction_tol = 1e-8);

// h = (-W F'' + W' F') / F, the zeroth-order ODE coefficient in
// W u'' - W' u' + h u = 0; exact division (NonDivisible otherwise).
template <class K>
Poly<K> ode_h_coefficient(const Poly<K>& W, const Poly<K>& F);

// exact-kind partner: solve F'G - FG' = c W for monic G of degree deg_g
std::optional<Poly<Rational>> partner_from_linear_system(const Poly<Rational>& W,
                                                         const Poly<Rational>& F, int deg_g);

// Heine-Stieltjes, orbit -> plane: span{F, G} with F = prod (x - t_i)
PolyPlane<Cplx> plane_from_orbit(const MasterProblem& p, const BetheOrbit& orbit);

// The same plane, canonicalized in the problem's centered/radius-scaled
// chart. There every coefficient is O(1)-conditioned, so plane identities
// can be compared at tight tolerances; the plain-chart monomial form has
// structurally tiny coefficients whenever W carries a high-multiplicity
// root, and those cannot beat the eps * scale^deg noise floor.
PolyPlane<Cplx> scaled_plane_from_orbit(const MasterProblem& p, const BetheOrbit& orbit);

// Heine-Stieltjes, plane -> orbit: roots of the smaller-degree polynomial
BetheOrbit orbit_from_plane(const PolyPlane<Cplx>& V, const MasterProblem& p);

// W(x) = prod_l (x - z_l)^{m_l} in the complex kind
Poly<Cplx> wronskian_target(const MasterProblem& p);

// det [P(xi); K_V] with P the derivative rows of (xi^d ... xi 1) and K_V the
// annihilator of V in descending coefficient coordinates; monic result
// equals the plane Wronskian. Exact kind.
Poly<Rational> curve_projection(const PolyPlane<Rational>& V);

// multiplicity of x0 as a root (exact kind)
int valuation_at(const Poly<Rational>& f, const Rational& x0);

// ---------------------------------------------------------------------------

template <class K>
PolyPlane<K> canonical_plane(std::vector<Poly<K>> gens) {
    std::vector<Poly<K>> pivots; // strictly decreasing degrees after sort
    for (Poly<K> g : gens) {
        g.trim();
        for (int guard = 0; guard < 1000; ++guard) {
            if (g.is_zero_poly()) break;
            bool matched = false;
            for (const Poly<K>& piv : pivots) {
                if (piv.degree() == g.degree()) {
                    // pivots are monic, so the leading term cancels exactly
                    g = g - g.lc() * piv;
                    g.trim();
                    matched = true;
                    break;
                }
            }
            if (!matched) break;
        }
        if (g.is_zero_poly()) throw DegeneratePlane("dependent generators");
        pivots.push_back(monic(g));
    }
    std::sort(pivots.begin(), pivots.end(),
              [](const Poly<K>& a, const Poly<K>& b) { return a.degree() > b.degree(); });
    // back-reduce: zero out the coefficient at each later pivot degree
    for (size_t i = 0; i < pivots.size(); ++i) {
        for (size_t j = i + 1; j < pivots.size(); ++j) {
            K c = pivots[i].coeff(pivots[j].degree());
            if (!is_zero(c)) pivots[i] = pivots[i] - c * pivots[j];
        }
        pivots[i].trim();
    }
    PolyPlane<K> plane;
    plane.ambient_degree = pivots.empty() ? 0 : pivots.front().degree();
    plane.basis = std::move(pivots);
    return plane;
}

template <class K>
Poly<K> ode_h_coefficient(const Poly<K>& W, const Poly<K>& F) {
    if (F.is_zero_poly()) throw ZeroPolynomial("ode_h_coefficient: F = 0");
    Poly<K> num = -(W * derivative(derivative(F))) + derivative(W) * derivative(F);
    if (num.is_zero_poly()) return Poly<K>();
    auto [quo, rem] = divmod(num, F);
    if constexpr (ScalarKind<K>::exact) {
        if (!rem.is_zero_poly()) throw NonDivisible("F does not divide -W F'' + W' F'");
    } else {
        if (rem.max_abs() > 1e-8 * std::max(num.max_abs(), 1.0))
            throw NonDivisible("F does not divide -W F'' + W' F' (within tolerance)");
    }
    return quo;
}

} // namespace bw
