#include "bw/roots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace bw {

namespace {

// Cauchy-style inclusion radius for the initial circle of guesses.
double root_radius(const Poly<Cplx>& f) {
    const int n = f.degree();
    double lead = std::abs(f.c[n]);
    double r = 0;
    for (int i = 0; i < n; ++i) r = std::max(r, std::pow(std::abs(f.c[i]) / lead, 1.0 / (n - i)));
    return 2.0 * std::max(r, 0.5);
}

} // namespace

std::vector<Cplx> roots_unclustered(const Poly<Cplx>& f, const RootConfig& cfg) {
    if (f.degree() < 1) throw Error("roots: degree must be >= 1");
    Poly<Cplx> p = monic(f);
    const int n = p.degree();
    const double scale = 1.0 + f.max_abs();

    // strip exact zero roots first; they are common and exact
    int zero_mult = 0;
    while (zero_mult < n && std::abs(p.c[zero_mult]) == 0.0) ++zero_mult;
    std::vector<Cplx> out(zero_mult, Cplx(0.0));
    if (zero_mult > 0) {
        std::vector<Cplx> shifted(p.c.begin() + zero_mult, p.c.end());
        p = Poly<Cplx>(std::move(shifted));
    }
    const int m = p.degree();
    if (m == 0) return out;

    Poly<Cplx> dp = derivative(p);
    const double r0 = root_radius(p);
    std::vector<Cplx> x(m);
    for (int i = 0; i < m; ++i) {
        double a = 2.0 * M_PI * (i + 0.25) / m + 0.61; // fixed offset, avoids axes
        x[i] = r0 * Cplx(std::cos(a), std::sin(a));
    }

    bool done = false;
    for (int iter = 0; iter < cfg.max_iterations && !done; ++iter) {
        done = true;
        for (int i = 0; i < m; ++i) {
            Cplx pv = p.eval(x[i]);
            if (std::abs(pv) / scale < cfg.tolerance * 1e-3) continue;
            Cplx dv = dp.eval(x[i]);
            Cplx w = (std::abs(dv) == 0.0) ? Cplx(0.0) : pv / dv;
            Cplx s(0.0);
            for (int j = 0; j < m; ++j)
                if (j != i) s += Cplx(1.0) / (x[i] - x[j]);
            Cplx denom = Cplx(1.0) - w * s;
            Cplx step = (std::abs(denom) < 1e-14) ? w : w / denom;
            if (std::abs(dv) == 0.0) {
                // sitting on a critical point: nudge deterministically
                step = Cplx(0.5, 0.3) * (std::abs(x[i]) + 1.0) * 1e-3;
            }
            x[i] -= step;
            if (std::abs(step) > 1e-14 * (1.0 + std::abs(x[i]))) done = false;
        }
    }

    // Newton polish
    for (int i = 0; i < m; ++i) {
        for (int it = 0; it < 16; ++it) {
            Cplx pv = p.eval(x[i]);
            Cplx dv = dp.eval(x[i]);
            if (std::abs(dv) == 0.0) break;
            Cplx step = pv / dv;
            if (std::abs(step) > 0.5 * (1.0 + std::abs(x[i]))) break; // diverging polish
            x[i] -= step;
            if (std::abs(step) < 1e-16 * (1.0 + std::abs(x[i]))) break;
        }
    }

    int bad = 0;
    for (int i = 0; i < m; ++i)
        if (!(std::abs(p.eval(x[i])) / scale < cfg.tolerance)) ++bad;
    if (bad > 0)
        throw NoConvergence("roots: " + std::to_string(bad) + " of " + std::to_string(m) +
                            " roots above tolerance after " + std::to_string(cfg.max_iterations) +
                            " iterations");

    out.insert(out.end(), x.begin(), x.end());
    std::sort(out.begin(), out.end(), [](const Cplx& a, const Cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

std::vector<Cplx> roots(const Poly<Cplx>& f, const RootConfig& cfg) {
    std::vector<Cplx> raw = roots_unclustered(f, cfg);
    // double roots cap attainable accuracy near sqrt(tolerance): cluster there
    const double cluster_eps = 10.0 * std::sqrt(cfg.tolerance);
    const int n = (int)raw.size();
    std::vector<int> comp(n);
    for (int i = 0; i < n; ++i) comp[i] = i;
    // union-find over pairwise proximity
    std::function<int(int)> find = [&](int a) { return comp[a] == a ? a : comp[a] = find(comp[a]); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(raw[i] - raw[j]) < cluster_eps) comp[find(i)] = find(j);
    std::vector<Cplx> out;
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (seen[r]) continue;
        seen[r] = true;
        Cplx centroid(0.0);
        int count = 0;
        for (int j = 0; j < n; ++j)
            if (find(j) == r) {
                centroid += raw[j];
                ++count;
            }
        centroid /= double(count);
        for (int c = 0; c < count; ++c) out.push_back(centroid);
    }
    std::sort(out.begin(), out.end(), [](const Cplx& a, const Cplx& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

} // namespace bw
