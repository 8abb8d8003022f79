#include "bw/wronski.hpp"

#include <algorithm>

#include "bw/exact_linalg.hpp"
#include "bw/roots.hpp"

namespace bw {

Poly<Cplx> wronskian_target(const MasterProblem& p) {
    Poly<Cplx> w = Poly<Cplx>::constant(Cplx(1.0));
    for (int l = 0; l < p.n(); ++l)
        for (int e = 0; e < p.M[l]; ++e) w = w * Poly<Cplx>(std::vector<Cplx>{-p.z[l], Cplx(1.0)});
    return w;
}

namespace {

// magnitude of a polynomial evaluated termwise at |x|; scale reference for
// "is this value numerically zero" questions
double eval_scale(const Poly<Cplx>& f, const Cplx& x) {
    double ax = std::abs(x);
    double s = 0, p = 1;
    for (const Cplx& c : f.c) {
        s += std::abs(c) * p;
        p *= ax;
    }
    return std::max(s, 1e-300);
}

// P(a x + b) by Horner; degree preserved for a != 0
Poly<Cplx> compose_affine(const Poly<Cplx>& P, const Cplx& a, const Cplx& b) {
    Poly<Cplx> lin(std::vector<Cplx>{b, a});
    Poly<Cplx> res;
    for (int j = P.degree(); j >= 0; --j) {
        res = res * lin;
        res = res + Poly<Cplx>::constant(P.c[j]);
    }
    return res;
}

// Wide-range marked points make monic coefficient vectors span many orders
// and polynomial determinants lose ~|z|^2-style factors of precision; both
// correspondence directions therefore compute in centered, radius-scaled
// coordinates y = (x - c)/s and map back affinely.
struct Frame {
    Cplx center{0.0};
    double scale = 1.0;

    static Frame of(const std::vector<Cplx>& z) {
        Frame f;
        for (const Cplx& v : z) f.center += v;
        f.center /= double(z.size());
        for (const Cplx& v : z) f.scale = std::max(f.scale, std::abs(v - f.center));
        return f;
    }
    Cplx to_scaled(const Cplx& x) const { return (x - center) / scale; }
    Cplx to_plain(const Cplx& y) const { return scale * y + center; }
    // monic P_s(y) -> the monic multiple of P_s((x - c)/s)
    Poly<Cplx> poly_to_plain(const Poly<Cplx>& ps) const {
        return monic(compose_affine(ps, Cplx(1.0 / scale), -center / scale));
    }
    // monic P(x) -> monic P(s y + c)/s^deg
    Poly<Cplx> poly_to_scaled(const Poly<Cplx>& p) const {
        return monic(compose_affine(p, Cplx(scale), center));
    }
    MasterProblem problem_to_scaled(const MasterProblem& p) const {
        MasterProblem q = p;
        for (Cplx& v : q.z) v = to_scaled(v);
        return q;
    }
};

} // namespace

Poly<Cplx> recover_partner(const Poly<Cplx>& W, const Poly<Cplx>& F, double obstruction_tol) {
    if (W.is_zero_poly() || F.is_zero_poly()) throw ZeroPolynomial("recover_partner");
    Poly<Cplx> f = monic(F);
    const int k = f.degree();

    std::vector<Cplx> t;
    if (k > 0) {
        t = roots(f);
        for (int i = 0; i + 1 < k; ++i)
            if (t[i] == t[i + 1]) throw DegeneratePlane("F has a multiple root");
    }

    Poly<Cplx> df = derivative(f);
    Poly<Cplx> ddf = derivative(df);
    Poly<Cplx> dW = derivative(W);

    // Laurent data of W/F^2 at each simple root: the 1/(x-t_i) coefficient is
    // the obstruction (equal to the Bethe residual up to a nonzero factor)
    std::vector<Cplx> b(k);
    for (int i = 0; i < k; ++i) {
        Cplx fp = df.eval(t[i]);
        Cplx wv = W.eval(t[i]);
        // "W(t_i) = 0 to machine precision": the evaluation roundoff floor is
        // eps * eval_scale, so anything below 1e-13 * eval_scale is a zero
        if (std::abs(wv) < 1e-13 * eval_scale(W, t[i]))
            throw SharedRoot("W and F share the root " + std::to_string(t[i].real()));
        Cplx fpp = ddf.eval(t[i]);
        Cplx a = (dW.eval(t[i]) - wv * fpp / fp) / (fp * fp);
        // scale from termwise magnitudes, not the cancelled values: at a
        // critical point the two terms cancel to roundoff. The double-pole
        // coefficient b_i joins the scale so that symmetric configurations
        // (where even the termwise sums vanish, e.g. odd W' at a midpoint
        // orbit) are not misread as obstructed.
        double scale = (eval_scale(dW, t[i]) + eval_scale(W, t[i]) * std::abs(fpp / fp)) /
                           std::norm(fp) +
                       std::abs(wv) / std::norm(fp) + 1e-300;
        if (std::abs(a) > obstruction_tol * scale)
            throw ResidueObstruction("simple-pole residue " + std::to_string(std::abs(a)) +
                                     " at root " + std::to_string(i));
        b[i] = wv / (fp * fp);
    }

    // W/F^2 = q + sum_i [a_i/(x-t_i) + b_i/(x-t_i)^2], a_i = 0 checked above;
    // antiderivative = Q - sum b_i/(x-t_i), and G = -F * antiderivative
    Poly<Cplx> f2 = f * f;
    auto [q, rem] = divmod(W, f2);
    Poly<Cplx> Q = antiderivative(q);
    Poly<Cplx> G = -(f * Q);
    // the degree is structural: deg(F Q), or k-1 when the polynomial part
    // vanishes (magnitude-based trimming would misjudge wide-range coefficients)
    int g_deg = Q.is_zero_poly() ? k - 1 : k + Q.degree();
    for (int i = 0; i < k; ++i) {
        // F/(x - t_i) by synthetic division
        std::vector<Cplx> quot(k);
        Cplx carry = f.c[k];
        for (int j = k - 1; j >= 0; --j) {
            quot[j] = carry;
            carry = f.c[j] + carry * t[i];
        }
        G = G + b[i] * Poly<Cplx>(std::move(quot));
    }
    G = detail::truncate_to_degree(G, g_deg);
    if (G.is_zero_poly()) throw ReconstructionFailed("partner collapsed to zero");
    G = monic(G);
    // canonical: kill the coefficient at deg F using F itself
    Cplx c = G.coeff(k);
    if (!is_zero(c) && G.degree() > k) G = G - c * f;
    return G;
}

std::optional<Poly<Rational>> partner_from_linear_system(const Poly<Rational>& W,
                                                         const Poly<Rational>& F, int deg_g) {
    // unknowns: g_0..g_{deg_g - 1} (G monic) and the scalar c in
    // F' G - F G' = c W
    const int k = F.degree();
    const int rows = k + deg_g; // degree bound of F'G - FG'
    RatMatrix a(rows, RatVector(deg_g + 1, Rational(0)));
    RatVector rhs(rows, Rational(0));

    auto add_pair_contrib = [&](int gexp, const Rational& gcoef, bool monic_term) {
        // contribution of the monomial g_gexp x^gexp to F'G - FG'
        for (int fi = 0; fi <= k; ++fi) {
            const Rational& fc = F.coeff(fi);
            if (is_zero(fc)) continue;
            // F' G term: fi * x^{fi-1} * x^{gexp}
            if (fi >= 1) {
                int pos = fi - 1 + gexp;
                Rational v = Rational((long)fi) * fc * gcoef;
                if (monic_term) rhs[pos] -= v;
                else a[pos][gexp] += v;
            }
            // -F G' term: -gexp * x^{fi} * x^{gexp-1}
            if (gexp >= 1) {
                int pos = fi + gexp - 1;
                Rational v = Rational((long)gexp) * fc * gcoef;
                if (monic_term) rhs[pos] += v;
                else a[pos][gexp] -= v;
            }
        }
    };
    for (int ge = 0; ge < deg_g; ++ge) add_pair_contrib(ge, Rational(1), false);
    add_pair_contrib(deg_g, Rational(1), true); // monic leading term goes to the RHS
    for (int i = 0; i < rows; ++i) a[i][deg_g] = -W.coeff(i); // -c W

    auto sol = exact_solve(a, rhs);
    if (!sol) return std::nullopt;
    std::vector<Rational> gc(sol->begin(), sol->begin() + deg_g);
    gc.push_back(Rational(1));
    Poly<Rational> G(std::move(gc));
    if (is_zero((*sol)[deg_g])) return std::nullopt; // c = 0: degenerate
    return G;
}

PolyPlane<Cplx> plane_from_orbit(const MasterProblem& p, const BetheOrbit& orbit) {
    p.validate();
    Frame frame = Frame::of(p.z);
    MasterProblem ps = frame.problem_to_scaled(p);
    std::vector<Cplx> ts;
    for (const Cplx& t : orbit.t) ts.push_back(frame.to_scaled(t));
    Poly<Cplx> W = wronskian_target(ps);
    Poly<Cplx> F = from_roots(ts);
    Poly<Cplx> G = recover_partner(W, F);
    return canonical_plane<Cplx>({frame.poly_to_plain(F), frame.poly_to_plain(G)});
}

PolyPlane<Cplx> scaled_plane_from_orbit(const MasterProblem& p, const BetheOrbit& orbit) {
    p.validate();
    Frame frame = Frame::of(p.z);
    MasterProblem ps = frame.problem_to_scaled(p);
    std::vector<Cplx> ts;
    for (const Cplx& t : orbit.t) ts.push_back(frame.to_scaled(t));
    Poly<Cplx> W = wronskian_target(ps);
    Poly<Cplx> F = from_roots(ts);
    Poly<Cplx> G = recover_partner(W, F);
    return canonical_plane<Cplx>({F, G});
}

namespace {

// relative-to-max coefficient mismatch, or +inf on a degree mismatch
double wronskian_mismatch(const std::vector<Poly<Cplx>>& basis, const Poly<Cplx>& target) {
    Poly<Cplx> wv;
    try {
        wv = wronskian_p(basis);
    } catch (const Error&) {
        return 1e300;
    }
    if (wv.degree() != target.degree()) return 1e300;
    double scale = std::max(target.max_abs(), 1.0);
    double worst = 0;
    for (int i = 0; i <= target.degree(); ++i)
        worst = std::max(worst, std::abs(wv.coeff(i) - target.coeff(i)) / scale);
    return worst;
}

} // namespace

BetheOrbit orbit_from_plane(const PolyPlane<Cplx>& V, const MasterProblem& p) {
    p.validate();
    if (V.dim() != 2) throw DegeneratePlane("need a 2-plane");
    // The Wronskian identity is validated in two charts and either
    // certificate is accepted: the plain monomial chart loses precision when
    // the coefficient range is wide (large marked points), the centered
    // scaled chart when the frame center dwarfs the spread. A wrong plane
    // misses by O(1) in both.
    Frame frame = Frame::of(p.z);
    double mismatch = wronskian_mismatch(V.basis, wronskian_target(p));
    if (mismatch > 1e-7) {
        std::vector<Poly<Cplx>> scaled_basis;
        for (const auto& b : V.basis) scaled_basis.push_back(frame.poly_to_scaled(b));
        mismatch = wronskian_mismatch(scaled_basis, wronskian_target(frame.problem_to_scaled(p)));
    }
    if (mismatch > 1e-7) throw DegeneratePlane("plane Wronskian differs from the target");

    const Poly<Cplx>& F = V.basis.back(); // smaller degree, monic, canonical
    if (F.degree() != p.k) throw DegeneratePlane("order of the plane is not k");
    std::vector<Cplx> t = F.degree() > 0 ? roots(F) : std::vector<Cplx>{};
    t = polish_coordinates(p, std::move(t));
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = i + 1; j < t.size(); ++j)
            if (std::abs(t[i] - t[j]) < 1e-8 * (1.0 + std::abs(t[i])))
                throw DegeneratePlane("multiple root in the smaller polynomial");
    for (const Cplx& c : t)
        for (const Cplx& zl : p.z)
            if (std::abs(c - zl) < 1e-6) throw DegeneratePlane("root collides with a marked point");

    BetheOrbit orbit;
    orbit.t = canonical_coords(t, 1e-8);
    if (p.k > 0) {
        std::vector<Cplx> r = bethe_residual(p, orbit.t);
        double rn = 0;
        for (const Cplx& c : r) rn += std::norm(c);
        orbit.residual = std::sqrt(rn);
        if (!(orbit.residual < 1e-8))
            throw DegeneratePlane("roots do not solve the Bethe system");
        auto [lo, hi] = singular_value_range(hessian_log_phi(p, orbit.t));
        orbit.hessian_min_sv = lo;
        orbit.hessian_norm = hi;
    }
    return orbit;
}

namespace {

Poly<Rational> lagrange_interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
    Poly<Rational> acc;
    for (size_t i = 0; i < xs.size(); ++i) {
        Poly<Rational> li = Poly<Rational>::constant(Rational(1));
        Rational denom(1);
        for (size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            li = li * Poly<Rational>(std::vector<Rational>{-xs[j], Rational(1)});
            denom *= (xs[i] - xs[j]);
        }
        Rational w = ys[i] / denom;
        acc = acc + w * li;
    }
    return acc;
}

} // namespace

Poly<Rational> curve_projection(const PolyPlane<Rational>& V) {
    const int p = V.dim();
    if (p == 0) throw DegeneratePlane("empty plane");
    const int d = std::max(V.ambient_degree, V.degree());
    const int cols = d + 1;

    // annihilator K_V: kernel of the p x (d+1) coefficient matrix
    // (descending coefficients)
    RatMatrix coeff(p, RatVector(cols, Rational(0)));
    for (int i = 0; i < p; ++i)
        for (int c = 0; c < cols; ++c) coeff[i][c] = V.basis[i].coeff(d - c);
    std::vector<RatVector> kv = exact_kernel(coeff);
    if ((int)kv.size() != cols - p) throw DegeneratePlane("basis is dependent");

    // det of the stacked (d+1)x(d+1) matrix as a polynomial in xi, by
    // evaluation at d*p + 1 points and exact interpolation
    const int deg_bound = p * d;
    std::vector<Rational> xs, ys;
    for (int s = 0; s <= deg_bound; ++s) {
        Rational xi((long)s);
        RatMatrix m(cols, RatVector(cols, Rational(0)));
        for (int r = 0; r < p; ++r) {
            for (int c = 0; c < cols; ++c) {
                int e = d - c - r; // r-th derivative of xi^{d-c}
                if (e < 0) continue;
                Rational fall(1);
                for (int q = 0; q < r; ++q) fall *= Rational((long)(d - c - q));
                Rational pw(1);
                for (int q = 0; q < e; ++q) pw *= xi;
                m[r][c] = fall * pw;
            }
        }
        for (int r = p; r < cols; ++r) m[r] = kv[r - p];
        xs.push_back(xi);
        ys.push_back(exact_determinant(m));
    }
    Poly<Rational> det = lagrange_interpolate(xs, ys);
    if (det.is_zero_poly()) throw DegeneratePlane("curve projection vanished");
    return monic(det);
}

int valuation_at(const Poly<Rational>& f, const Rational& x0) {
    if (f.is_zero_poly()) throw ZeroPolynomial("valuation of zero polynomial");
    Poly<Rational> lin(std::vector<Rational>{-x0, Rational(1)});
    Poly<Rational> cur = f;
    int v = 0;
    for (;;) {
        auto [quo, rem] = divmod(cur, lin);
        if (!rem.is_zero_poly()) return v;
        ++v;
        cur = quo;
    }
}

} // namespace bw
