#include "bw/bethe.hpp"

#include <algorithm>
#include <optional>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "bw/polynomial.hpp"
#include "bw/rng.hpp"
#include "bw/roots.hpp"

namespace bw {

void MasterProblem::validate() const {
    if (M.empty()) throw WeightMismatch("empty weight vector");
    if (M.size() != z.size()) throw WeightMismatch("|M| != |z|");
    for (int m : M)
        if (m <= 0) throw WeightMismatch("weights must be positive");
    if (k < 0 || 2 * k > total()) throw WeightMismatch("need 0 <= 2k <= |M|");
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = i + 1; j < z.size(); ++j)
            if (z[i] == z[j]) throw CoincidingPoints("z_i = z_j");
}

namespace {

void check_configuration_space(const MasterProblem& p, const std::vector<Cplx>& t) {
    for (size_t i = 0; i < t.size(); ++i) {
        for (size_t l = 0; l < p.z.size(); ++l)
            if (t[i] == p.z[l]) throw OnDiagonal("t_i = z_l");
        for (size_t j = i + 1; j < t.size(); ++j)
            if (t[i] == t[j]) throw OnDiagonal("t_i = t_j");
    }
}

double norm2(const std::vector<Cplx>& v) {
    double s = 0;
    for (const Cplx& c : v) s += std::norm(c);
    return std::sqrt(s);
}

} // namespace

Cplx master_value(const MasterProblem& p, const std::vector<Cplx>& t) {
    p.validate();
    if ((int)t.size() != p.k) throw WeightMismatch("t has wrong length");
    check_configuration_space(p, t);
    Cplx acc(1.0);
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t l = 0; l < p.z.size(); ++l)
            for (int e = 0; e < p.M[l]; ++e) acc /= (t[i] - p.z[l]);
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = i + 1; j < t.size(); ++j) {
            Cplx d = t[i] - t[j];
            acc *= d * d;
        }
    return acc;
}

std::vector<Cplx> bethe_residual(const MasterProblem& p, const std::vector<Cplx>& t) {
    if ((int)t.size() != p.k) throw WeightMismatch("t has wrong length");
    check_configuration_space(p, t);
    std::vector<Cplx> r(t.size(), Cplx(0.0));
    for (size_t i = 0; i < t.size(); ++i) {
        for (size_t l = 0; l < p.z.size(); ++l) r[i] += double(p.M[l]) / (t[i] - p.z[l]);
        for (size_t j = 0; j < t.size(); ++j)
            if (j != i) r[i] -= 2.0 / (t[i] - t[j]);
    }
    return r;
}

std::vector<std::vector<Cplx>> hessian_log_phi(const MasterProblem& p, const std::vector<Cplx>& t) {
    const int k = (int)t.size();
    std::vector<std::vector<Cplx>> h(k, std::vector<Cplx>(k, Cplx(0.0)));
    for (int i = 0; i < k; ++i) {
        Cplx diag(0.0);
        for (size_t l = 0; l < p.z.size(); ++l) {
            Cplx d = t[i] - p.z[l];
            diag += double(p.M[l]) / (d * d);
        }
        for (int j = 0; j < k; ++j) {
            if (j == i) continue;
            Cplx d = t[i] - t[j];
            Cplx v = 2.0 / (d * d);
            h[i][j] = v;
            diag -= v;
        }
        h[i][i] = diag;
    }
    return h;
}

std::pair<double, double> singular_value_range(const std::vector<std::vector<Cplx>>& m) {
    const int k = (int)m.size();
    if (k == 0) return {1.0, 1.0};
    Eigen::MatrixXcd a(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a(i, j) = m[i][j];
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& sv = svd.singularValues();
    return {sv(k - 1), sv(0)};
}

long expected_orbit_count(const MasterProblem& p) {
    WeightDatum wd{p.M, p.k};
    if (p.n() >= 2) return checked_to_long(dim_sing_formula(wd), "expected_orbit_count");
    return dim_sing_kernel(wd);
}

std::vector<Cplx> canonical_coords(std::vector<Cplx> t, double round_to) {
    auto key = [round_to](const Cplx& c) {
        return std::pair<double, double>(std::round(c.real() / round_to) * round_to,
                                         std::round(c.imag() / round_to) * round_to);
    };
    std::sort(t.begin(), t.end(), [&](const Cplx& a, const Cplx& b) { return key(a) < key(b); });
    return t;
}

// multiset distance: min over pairings of the worst coordinate gap. Orbit
// identity cannot rely on the canonical sort order (coordinates near a
// rounding boundary may order differently between two converged copies).
double orbit_distance(const std::vector<Cplx>& a, const std::vector<Cplx>& b) {
    const int k = (int)a.size();
    if ((int)b.size() != k) return 1e300;
    if (k <= 7) {
        std::vector<int> perm(k);
        for (int i = 0; i < k; ++i) perm[i] = i;
        double best = 1e300;
        do {
            double worst = 0;
            for (int i = 0; i < k; ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
            best = std::min(best, worst);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }
    // greedy nearest-neighbor matching for large k
    std::vector<bool> used(k, false);
    double worst = 0;
    for (int i = 0; i < k; ++i) {
        int pick = -1;
        double bd = 1e300;
        for (int j = 0; j < k; ++j) {
            if (used[j]) continue;
            double d = std::abs(a[i] - b[j]);
            if (d < bd) {
                bd = d;
                pick = j;
            }
        }
        used[pick] = true;
        worst = std::max(worst, bd);
    }
    return worst;
}

namespace {

// Hessian of log Phi equals minus the Jacobian of bethe_residual; reuse it.
// The line search decreases the scale-weighted residual |(1+|t_i-c|) r_i|:
// the plain norm also decays along escapes to infinity (components behave
// like (|M|-2k+2)/t), so it cannot serve as a merit function there.
std::optional<std::vector<Cplx>> newton_solve(const MasterProblem& p, std::vector<Cplx> t,
                                              const SolverConfig& cfg, const Cplx& center,
                                              double radius) {
    const int k = p.k;
    const double guard = 1e-13;
    const double escape = 20.0 * (radius + 1.0);

    auto too_close = [&](const std::vector<Cplx>& x, double margin) {
        for (int i = 0; i < k; ++i) {
            for (size_t l = 0; l < p.z.size(); ++l)
                if (std::abs(x[i] - p.z[l]) < margin) return true;
            for (int j = i + 1; j < k; ++j)
                if (std::abs(x[i] - x[j]) < margin) return true;
        }
        return false;
    };
    auto merit = [&](const std::vector<Cplx>& x, const std::vector<Cplx>& r) {
        double s = 0;
        for (int i = 0; i < k; ++i) {
            double w = (1.0 + std::abs(x[i] - center)) * std::abs(r[i]);
            s += w * w;
        }
        return std::sqrt(s);
    };
    auto escaped = [&](const std::vector<Cplx>& x) {
        for (const Cplx& c : x)
            if (std::abs(c - center) > escape) return true;
        return false;
    };

    if (too_close(t, guard) || escaped(t)) return std::nullopt;
    std::vector<Cplx> r = bethe_residual(p, t);
    double rm = merit(t, r);

    for (int iter = 0; iter < cfg.max_newton_iter; ++iter) {
        if (norm2(r) < cfg.newton_tol) return t;
        auto h = hessian_log_phi(p, t);
        Eigen::MatrixXcd jac(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) jac(i, j) = -h[i][j];
        Eigen::VectorXcd rhs(k);
        for (int i = 0; i < k; ++i) rhs(i) = -r[i];
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(jac);
        Eigen::VectorXcd step = lu.solve(rhs);
        if (!step.allFinite()) return std::nullopt;

        double lambda = 1.0;
        bool advanced = false;
        for (int halving = 0; halving < 24; ++halving, lambda *= 0.5) {
            std::vector<Cplx> cand(t);
            for (int i = 0; i < k; ++i) cand[i] += lambda * step(i);
            if (too_close(cand, guard) || escaped(cand)) continue;
            std::vector<Cplx> rc = bethe_residual(p, cand);
            double rcm = merit(cand, rc);
            if (rcm < (1.0 - 1e-4 * lambda) * rm || norm2(rc) < cfg.newton_tol) {
                t.swap(cand);
                r.swap(rc);
                rm = rcm;
                advanced = true;
                break;
            }
        }
        if (!advanced) return std::nullopt;
    }
    return (norm2(r) < cfg.newton_tol) ? std::optional<std::vector<Cplx>>(t) : std::nullopt;
}

struct StartOutcome {
    bool found = false;
    std::vector<Cplx> t;
    double residual = 0;
    double sv_min = 1, sv_max = 1;
};

} // namespace

SolveResult solve_orbits(const MasterProblem& p, const SolverConfig& cfg) {
    p.validate();
    SolveResult result;
    result.expected = expected_orbit_count(p);

    if (p.k == 0) {
        // the empty critical point: one orbit by convention
        result.orbits.push_back(BetheOrbit{});
        result.complete = (result.expected == 1);
        result.excess = (result.expected < 1);
        return result;
    }

    const long standard_budget = cfg.max_starts > 0 ? cfg.max_starts : 200 * std::max(result.expected, 1L);
    const long budget = cfg.exhaustive ? 5 * standard_budget : standard_budget;

    // deterministic heuristic starts: roots of W^(|M|-k) (degree k), plus
    // perturbed copies; random disk starts beyond that
    std::vector<std::vector<Cplx>> heuristics;
    {
        Poly<Cplx> w = Poly<Cplx>::constant(Cplx(1.0));
        for (int l = 0; l < p.n(); ++l)
            for (int e = 0; e < p.M[l]; ++e) w = w * Poly<Cplx>(std::vector<Cplx>{-p.z[l], Cplx(1.0)});
        Poly<Cplx> d = w;
        for (int i = 0; i < p.total() - p.k; ++i) d = derivative(d);
        try {
            std::vector<Cplx> base = roots_unclustered(d);
            double spread = 1.0;
            for (const Cplx& a : p.z)
                for (const Cplx& b : p.z) spread = std::max(spread, std::abs(a - b));
            for (int variant = 0; variant < 4; ++variant) {
                std::vector<Cplx> s = base;
                for (size_t i = 0; i < s.size(); ++i) {
                    double phase = 2.0 * M_PI * (double(i) / double(s.size()) + 0.3 * variant);
                    s[i] += 0.02 * variant * spread * Cplx(std::cos(phase), std::sin(phase));
                }
                heuristics.push_back(std::move(s));
            }
        } catch (const NoConvergence&) {
            // fall through to random starts only
        }
    }

    Cplx center(0.0);
    for (const Cplx& v : p.z) center += v;
    center /= double(p.n());
    double radius = 1.0;
    for (const Cplx& v : p.z) radius = std::max(radius, std::abs(v - center));

    // nearest-neighbor gap per marked point, for charge-anchored starts
    std::vector<double> gap(p.n(), 2.0 * radius);
    for (int a = 0; a < p.n(); ++a)
        for (int b = 0; b < p.n(); ++b)
            if (a != b) gap[a] = std::min(gap[a], std::abs(p.z[a] - p.z[b]));

    std::vector<StartOutcome> outcomes(budget);
    Rng master(cfg.seed);

    auto run_start = [&](long s) {
        std::vector<Cplx> t0;
        if (s < (long)heuristics.size()) {
            t0 = heuristics[s];
        } else {
            // critical coordinates sit in the potential wells between the
            // charges, so most starts anchor near a weight-sampled z_l; a
            // fraction stays global to cover outliers
            Rng rng = master.derive((std::uint64_t)s);
            t0.resize(p.k);
            for (int i = 0; i < p.k; ++i) {
                if (rng.uniform() < 0.25) {
                    t0[i] = center + rng.disk(2.0 * radius);
                } else {
                    long pick = rng.uniform_int(1, p.total());
                    int l = 0;
                    for (long acc = p.M[0]; acc < pick; acc += p.M[++l]) {}
                    t0[i] = p.z[l] + rng.disk(0.75 * gap[l]);
                }
            }
        }
        if ((int)t0.size() != p.k) return;
        auto sol = newton_solve(p, std::move(t0), cfg, center, radius);
        if (!sol) return;
        const std::vector<Cplx>& t = *sol;
        // outside the configuration space with margin -> reject
        for (int i = 0; i < p.k; ++i) {
            for (size_t l = 0; l < p.z.size(); ++l)
                if (std::abs(t[i] - p.z[l]) < cfg.sep_tol) return;
            for (int j = i + 1; j < p.k; ++j)
                if (std::abs(t[i] - t[j]) < cfg.sep_tol) return;
        }
        std::vector<Cplx> r = bethe_residual(p, t);
        double res = norm2(r);
        if (!(res < cfg.tol)) return;
        // the plain residual also vanishes along t -> infinity (each component
        // decays like (|M|-2k+2)/t); the scale-weighted residual tends to a
        // nonzero constant there, so it separates escapes from critical points
        double scaled = 0;
        for (int i = 0; i < p.k; ++i) {
            double w = (1.0 + std::abs(t[i] - center)) * std::abs(r[i]);
            scaled += w * w;
        }
        if (!(std::sqrt(scaled) < cfg.tol * (1.0 + radius))) return;
        auto [lo, hi] = singular_value_range(hessian_log_phi(p, t));
        StartOutcome& o = outcomes[s];
        o.found = true;
        o.t = canonical_coords(t, cfg.canonical_round);
        o.residual = res;
        o.sv_min = lo;
        o.sv_max = hi;
    };

    std::vector<BetheOrbit> orbits;
    long merged_until = 0;
    auto merge_and_check = [&](long end) {
        for (long s = merged_until; s < end; ++s) {
            const StartOutcome& o = outcomes[s];
            if (!o.found) continue;
            bool dup = false;
            for (const BetheOrbit& known : orbits) {
                if (orbit_distance(known.t, o.t) < cfg.dedup_tol) {
                    dup = true;
                    break;
                }
            }
            if (!dup) orbits.push_back(BetheOrbit{o.t, o.residual, o.sv_min, o.sv_max});
        }
        merged_until = end;
        // early stop only once every expected orbit is in hand (never when
        // hunting for parasites)
        return !cfg.exhaustive && (long)orbits.size() >= result.expected;
    };

    run_multistart(budget, cfg.mode, cfg.threads, run_start, merge_and_check);
    result.starts_used = merged_until;

    std::sort(orbits.begin(), orbits.end(), [](const BetheOrbit& a, const BetheOrbit& b) {
        auto key = [](const Cplx& c) { return std::pair<double, double>(c.real(), c.imag()); };
        for (size_t i = 0; i < a.t.size(); ++i) {
            if (key(a.t[i]) != key(b.t[i])) return key(a.t[i]) < key(b.t[i]);
        }
        return false;
    });
    result.orbits = std::move(orbits);
    result.complete = ((long)result.orbits.size() == result.expected);
    result.excess = ((long)result.orbits.size() > result.expected);
    result.budget_exhausted = !result.complete && !result.excess;
    return result;
}

std::vector<Cplx> polish_coordinates(const MasterProblem& p, std::vector<Cplx> t, int max_iter) {
    if ((int)t.size() != p.k || p.k == 0) return t;
    const int k = p.k;
    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<Cplx> r;
        try {
            r = bethe_residual(p, t);
        } catch (const OnDiagonal&) {
            return t;
        }
        if (norm2(r) < 1e-14) break;
        auto h = hessian_log_phi(p, t);
        Eigen::MatrixXcd jac(k, k);
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) jac(i, j) = -h[i][j];
        Eigen::VectorXcd rhs(k);
        for (int i = 0; i < k; ++i) rhs(i) = -r[i];
        Eigen::VectorXcd step = Eigen::PartialPivLU<Eigen::MatrixXcd>(jac).solve(rhs);
        if (!step.allFinite()) return t;
        double limit = 0;
        for (int i = 0; i < k; ++i) limit = std::max(limit, std::abs(step(i)) / (1.0 + std::abs(t[i])));
        if (limit > 0.1) return t; // not in a basin; refuse to wander
        for (int i = 0; i < k; ++i) t[i] += step(i);
    }
    return t;
}

Cplx a_coefficient_direct(const MultiIndex& J, const std::vector<Cplx>& t, const std::vector<Cplx>& z) {
    const int k = (int)t.size();
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    // slot l sequence: j_1 slots for z_1, then j_2 for z_2, ...
    std::vector<int> slot_factor;
    for (size_t l = 0; l < J.size(); ++l)
        for (int c = 0; c < J[l]; ++c) slot_factor.push_back((int)l);
    Cplx acc(0.0);
    do {
        Cplx prod(1.0);
        for (int s = 0; s < k; ++s) prod /= (t[perm[s]] - z[slot_factor[s]]);
        acc += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    double denom = 1.0;
    for (int j : J) denom *= factorial((unsigned)j).get_d();
    return acc / denom;
}

Cplx a_coefficient_assignments(const MultiIndex& J, const std::vector<Cplx>& t, const std::vector<Cplx>& z) {
    const int k = (int)t.size();
    std::vector<int> remaining(J.begin(), J.end());
    Cplx acc(0.0);
    // assign each t_i a factor label with remaining capacity
    std::function<void(int, Cplx)> rec = [&](int i, Cplx prod) {
        if (i == k) {
            acc += prod;
            return;
        }
        for (size_t l = 0; l < remaining.size(); ++l) {
            if (remaining[l] == 0) continue;
            remaining[l]--;
            rec(i + 1, prod / (t[i] - z[l]));
            remaining[l]++;
        }
    };
    rec(0, Cplx(1.0));
    return acc;
}

TensorState<Cplx> bethe_vector(const MasterProblem& p, const BetheOrbit& orbit) {
    p.validate();
    if ((int)orbit.t.size() != p.k) throw DegenerateOrbit("orbit size != k");
    for (const Cplx& c : orbit.t)
        for (const Cplx& zl : p.z)
            if (std::abs(c - zl) < 1e-12) throw DegenerateOrbit("orbit coordinate on z");
    TensorState<Cplx> w;
    w.M = p.M;
    if (p.k == 0) {
        w.entries[MultiIndex(p.M.size(), 0)] = Cplx(1.0);
        return w;
    }
    for (const MultiIndex& J : weight_block_basis(p.M, p.k)) {
        Cplx a = (p.k <= 8) ? a_coefficient_direct(J, orbit.t, p.z)
                            : a_coefficient_assignments(J, orbit.t, p.z);
        w.add(J, a);
    }
    if (w.is_zero_state()) throw DegenerateOrbit("Bethe vector vanished");
    return w;
}

std::vector<Cplx> bethe_eigenvalues(const MasterProblem& p, const BetheOrbit& orbit) {
    p.validate();
    std::vector<Cplx> lambda(p.n(), Cplx(0.0));
    for (int i = 0; i < p.n(); ++i) {
        for (int j = 0; j < p.n(); ++j)
            if (j != i) lambda[i] += double(p.M[i] * p.M[j]) / (2.0 * (p.z[i] - p.z[j]));
        for (const Cplx& ta : orbit.t) lambda[i] += double(p.M[i]) / (ta - p.z[i]);
    }
    return lambda;
}

} // namespace bw
