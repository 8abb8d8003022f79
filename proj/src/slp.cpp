#include "bw/slp.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include <Eigen/Dense>

#include "bw/exact_linalg.hpp"
#include "bw/rng.hpp"
#include "bw/roots.hpp"

namespace bw {

std::vector<int> SlpProblem::plane_type() const {
    std::vector<int> d(p);
    auto kk = [&](int l) -> int {
        if (l == 0) return total();
        if (l >= p) return 0;
        return k[l - 1];
    };
    for (int l = 1; l <= p; ++l) d[l - 1] = kk(l - 1) - kk(l) + p - l;
    return d;
}

void SlpProblem::validate(bool need_z) const {
    if (p < 2) throw WeightMismatch("p must be >= 2");
    if (M.empty()) throw WeightMismatch("empty weight vector");
    for (int m : M)
        if (m <= 0) throw WeightMismatch("weights must be positive");
    if ((int)k.size() != p - 1) throw WeightMismatch("k must have length p-1");
    for (size_t i = 0; i < k.size(); ++i) {
        if (k[i] < 0) throw WeightMismatch("k_l must be nonnegative");
        if (i > 0 && k[i] > k[i - 1]) throw WeightMismatch("need k_1 >= ... >= k_{p-1}");
    }
    if (need_z) {
        if (M.size() != z.size()) throw WeightMismatch("|M| != |z|");
        for (size_t i = 0; i < z.size(); ++i)
            for (size_t j = i + 1; j < z.size(); ++j)
                if (z[i] == z[j]) throw CoincidingPoints("z_i = z_j");
    }
}

namespace {

void check_shape(const SlpProblem& prob, const Leveled& t) {
    if ((int)t.size() != prob.p - 1) throw WeightMismatch("leveled t has wrong level count");
    for (int l = 0; l < prob.p - 1; ++l)
        if ((int)t[l].size() != prob.k[l]) throw WeightMismatch("level size mismatch");
}

void check_diagonals(const SlpProblem& prob, const Leveled& t) {
    for (int l = 0; l < prob.p - 1; ++l) {
        for (size_t i = 0; i < t[l].size(); ++i) {
            for (size_t j = i + 1; j < t[l].size(); ++j)
                if (t[l][i] == t[l][j]) throw OnDiagonal("equal coordinates within a level");
            if (l + 1 < prob.p - 1)
                for (const Cplx& u : t[l + 1])
                    if (t[l][i] == u) throw OnDiagonal("equal coordinates on adjacent levels");
            if (l == 0)
                for (const Cplx& zz : prob.z)
                    if (t[0][i] == zz) throw OnDiagonal("t on a marked point");
        }
    }
}

Poly<Cplx> target_wronskian(const SlpProblem& prob) {
    Poly<Cplx> w = Poly<Cplx>::constant(Cplx(1.0));
    for (int j = 0; j < prob.n(); ++j)
        for (int e = 0; e < prob.M[j]; ++e)
            w = w * Poly<Cplx>(std::vector<Cplx>{-prob.z[j], Cplx(1.0)});
    return w;
}

} // namespace

Cplx slp_master_value(const SlpProblem& prob, const Leveled& t) {
    prob.validate(true);
    check_shape(prob, t);
    check_diagonals(prob, t);
    Cplx acc(1.0);
    for (int l = 0; l < prob.p - 1; ++l)
        for (size_t i = 0; i < t[l].size(); ++i)
            for (size_t j = i + 1; j < t[l].size(); ++j) {
                Cplx d = t[l][i] - t[l][j];
                acc *= d * d;
            }
    for (int l = 1; l < prob.p - 1; ++l)
        for (const Cplx& a : t[l - 1])
            for (const Cplx& b : t[l]) acc /= (a - b);
    for (int j = 0; j < prob.n(); ++j)
        for (const Cplx& a : t[0])
            for (int e = 0; e < prob.M[j]; ++e) acc /= (a - prob.z[j]);
    return acc;
}

Cplx slp_master_disc_res(const SlpProblem& prob, const Leveled& t) {
    prob.validate(true);
    check_shape(prob, t);
    check_diagonals(prob, t);
    Poly<Cplx> W = target_wronskian(prob);
    std::vector<Poly<Cplx>> Wl;
    for (int l = 0; l < prob.p - 1; ++l) Wl.push_back(from_roots(t[l]));

    Cplx num(1.0);
    for (int l = 0; l < prob.p - 1; ++l)
        if (Wl[l].degree() >= 1) num *= discriminant(Wl[l]);
    Cplx den(1.0);
    if (prob.p >= 2 && Wl[0].degree() >= 0) den *= resultant(W, Wl[0]);
    for (int l = 1; l < prob.p - 1; ++l) den *= resultant(Wl[l - 1], Wl[l]);
    // Res(W, W_1) = (-1)^{k_1 |M|} prod (t^1_i - z_j)^{m_j}; everything else
    // is sign-free with the f-rows-first convention
    double sign = ((long)prob.k[0] * prob.total()) % 2 == 0 ? 1.0 : -1.0;
    return sign * num / den;
}

Leveled slp_residual(const SlpProblem& prob, const Leveled& t) {
    prob.validate(true);
    check_shape(prob, t);
    check_diagonals(prob, t);
    const int levels = prob.p - 1;
    Leveled r(levels);
    for (int l = 0; l < levels; ++l) {
        r[l].assign(t[l].size(), Cplx(0.0));
        for (size_t i = 0; i < t[l].size(); ++i) {
            Cplx v(0.0);
            if (l == 0)
                for (int j = 0; j < prob.n(); ++j) v += double(prob.M[j]) / (t[0][i] - prob.z[j]);
            for (size_t j = 0; j < t[l].size(); ++j)
                if (j != i) v -= 2.0 / (t[l][i] - t[l][j]);
            if (l >= 1)
                for (const Cplx& a : t[l - 1]) v -= 1.0 / (a - t[l][i]);
            if (l + 1 < levels)
                for (const Cplx& b : t[l + 1]) v += 1.0 / (t[l][i] - b);
            r[l][i] = v;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// exact singular-vector dimension

namespace {

// degree-m monomials in p letters, lexicographic
std::vector<std::vector<int>> sym_basis(int p, int m) {
    std::vector<std::vector<int>> out;
    std::vector<int> c(p, 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == p - 1) {
            c[pos] = remaining;
            out.push_back(c);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            c[pos] = v;
            rec(pos + 1, remaining - v);
        }
    };
    rec(0, m);
    std::sort(out.begin(), out.end());
    return out;
}

struct SlpBlock {
    std::vector<std::vector<int>> states; // per state: one sym-basis index per factor
    std::vector<std::vector<std::vector<int>>> factor_bases;
};

// enumerate tensor states with prescribed gl-weight (column sums)
SlpBlock slp_weight_block(const SlpProblem& prob, const std::vector<int>& weight, long cap) {
    SlpBlock block;
    const int n = prob.n();
    block.factor_bases.resize(n);
    for (int j = 0; j < n; ++j) block.factor_bases[j] = sym_basis(prob.p, prob.M[j]);
    std::vector<int> pick(n, 0);
    std::vector<int> acc(prob.p, 0);
    std::function<void(int)> rec = [&](int j) {
        if ((long)block.states.size() > cap) return;
        if (j == n) {
            for (int i = 0; i < prob.p; ++i)
                if (acc[i] != weight[i]) return;
            block.states.push_back(pick);
            return;
        }
        for (size_t s = 0; s < block.factor_bases[j].size(); ++s) {
            const auto& c = block.factor_bases[j][s];
            bool feasible = true;
            for (int i = 0; i < prob.p; ++i)
                if (acc[i] + c[i] > weight[i]) feasible = false;
            if (!feasible) continue;
            for (int i = 0; i < prob.p; ++i) acc[i] += c[i];
            pick[j] = (int)s;
            rec(j + 1);
            for (int i = 0; i < prob.p; ++i) acc[i] -= c[i];
        }
    };
    rec(0);
    return block;
}

} // namespace

long slp_dim_sing(const SlpProblem& prob, long block_cap) {
    prob.validate(false);
    // gl weight of the target: (|M| - k_1, k_1 - k_2, ..., k_{p-1})
    std::vector<int> weight(prob.p);
    auto kk = [&](int l) -> int {
        if (l == 0) return prob.total();
        if (l >= prob.p) return 0;
        return prob.k[l - 1];
    };
    for (int i = 0; i < prob.p; ++i) weight[i] = kk(i) - kk(i + 1);
    for (int i = 0; i < prob.p; ++i)
        if (weight[i] < 0) return 0; // no states of this weight

    SlpBlock block = slp_weight_block(prob, weight, block_cap);
    if ((long)block.states.size() > block_cap)
        throw BlockTooLarge("weight block exceeds cap " + std::to_string(block_cap));
    if (block.states.empty()) return 0;

    std::map<std::vector<int>, int> state_index;
    for (size_t s = 0; s < block.states.size(); ++s) state_index[block.states[s]] = (int)s;

    // stack the p-1 raising operators e_i : block(w) -> block(w + alpha_i)
    RatMatrix stacked;
    for (int i = 0; i + 1 < prob.p; ++i) {
        std::vector<int> wup = weight;
        wup[i] += 1;
        wup[i + 1] -= 1;
        if (wup[i + 1] < 0) continue;
        SlpBlock up = slp_weight_block(prob, wup, block_cap * prob.p + 16);
        std::map<std::vector<int>, int> up_index;
        for (size_t s = 0; s < up.states.size(); ++s) up_index[up.states[s]] = (int)s;
        RatMatrix rows(up.states.size(), RatVector(block.states.size(), Rational(0)));
        for (size_t s = 0; s < block.states.size(); ++s) {
            for (int j = 0; j < prob.n(); ++j) {
                const auto& c = block.factor_bases[j][block.states[s][j]];
                if (c[i + 1] == 0) continue;
                std::vector<int> cc = c;
                cc[i + 1] -= 1;
                cc[i] += 1;
                // locate cc in factor j's basis
                const auto& fb = block.factor_bases[j];
                int ci = (int)(std::lower_bound(fb.begin(), fb.end(), cc) - fb.begin());
                std::vector<int> target_state = block.states[s];
                target_state[j] = ci;
                auto it = up_index.find(target_state);
                if (it == up_index.end()) continue; // cannot happen: weight bookkeeping
                rows[it->second][s] += Rational((long)c[i + 1]);
            }
        }
        for (auto& row : rows) stacked.push_back(std::move(row));
    }
    if (stacked.empty()) return (long)block.states.size();
    return (long)block.states.size() - exact_rank(stacked);
}

// ---------------------------------------------------------------------------
// leveled multistart solver

namespace {

struct Flat {
    std::vector<int> offsets; // level -> start index
    int total = 0;
};

Flat flatten_shape(const SlpProblem& prob) {
    Flat f;
    f.offsets.resize(prob.p - 1);
    for (int l = 0; l < prob.p - 1; ++l) {
        f.offsets[l] = f.total;
        f.total += prob.k[l];
    }
    return f;
}

Leveled unflatten(const SlpProblem& prob, const Flat& f, const std::vector<Cplx>& x) {
    Leveled t(prob.p - 1);
    for (int l = 0; l < prob.p - 1; ++l)
        t[l].assign(x.begin() + f.offsets[l], x.begin() + f.offsets[l] + prob.k[l]);
    return t;
}

std::vector<Cplx> flatten_t(const Leveled& t) {
    std::vector<Cplx> x;
    for (const auto& lvl : t) x.insert(x.end(), lvl.begin(), lvl.end());
    return x;
}

// analytic Jacobian of the flattened residual; symmetric (it is minus the
// Hessian of log of the master function)
Eigen::MatrixXcd slp_jacobian(const SlpProblem& prob, const Flat& f, const Leveled& t) {
    const int n = f.total;
    Eigen::MatrixXcd jac = Eigen::MatrixXcd::Zero(n, n);
    const int levels = prob.p - 1;
    auto idx = [&](int l, int i) { return f.offsets[l] + i; };
    for (int l = 0; l < levels; ++l) {
        for (int i = 0; i < (int)t[l].size(); ++i) {
            Cplx diag(0.0);
            if (l == 0)
                for (int j = 0; j < prob.n(); ++j) {
                    Cplx d = t[0][i] - prob.z[j];
                    diag -= double(prob.M[j]) / (d * d);
                }
            for (int j = 0; j < (int)t[l].size(); ++j) {
                if (j == i) continue;
                Cplx d = t[l][i] - t[l][j];
                Cplx v = 2.0 / (d * d);
                diag += v;
                jac(idx(l, i), idx(l, j)) = -v;
            }
            if (l >= 1)
                for (int a = 0; a < (int)t[l - 1].size(); ++a) {
                    Cplx d = t[l - 1][a] - t[l][i];
                    Cplx v = 1.0 / (d * d);
                    diag -= v;
                    jac(idx(l, i), idx(l - 1, a)) = v;
                }
            if (l + 1 < levels)
                for (int b = 0; b < (int)t[l + 1].size(); ++b) {
                    Cplx d = t[l][i] - t[l + 1][b];
                    Cplx v = 1.0 / (d * d);
                    diag -= v;
                    jac(idx(l, i), idx(l + 1, b)) = v;
                }
            jac(idx(l, i), idx(l, i)) = diag;
        }
    }
    return jac;
}

double leveled_norm(const Leveled& r) {
    double s = 0;
    for (const auto& lvl : r)
        for (const Cplx& c : lvl) s += std::norm(c);
    return std::sqrt(s);
}

} // namespace

SlpSolveResult slp_solve_orbits(const SlpProblem& prob, const SolverConfig& cfg) {
    prob.validate(true);
    SlpSolveResult result;
    result.expected = slp_dim_sing(prob);
    const Flat flat = flatten_shape(prob);

    if (flat.total == 0) {
        SlpOrbit o;
        o.t.assign(prob.p - 1, {});
        result.orbits.push_back(o);
        result.complete = (result.expected == 1);
        result.excess = (result.expected < 1);
        return result;
    }

    // leveled basins are markedly thinner than the sl2 ones; the default
    // budget is correspondingly larger
    const long standard_budget =
        cfg.max_starts > 0 ? cfg.max_starts : 2000 * std::max(result.expected, 1L);
    const long budget = cfg.exhaustive ? 5 * standard_budget : standard_budget;

    Cplx center(0.0);
    for (const Cplx& v : prob.z) center += v;
    center /= double(prob.n());
    double radius = 1.0;
    for (const Cplx& v : prob.z) radius = std::max(radius, std::abs(v - center));
    std::vector<double> gap(prob.n(), 2.0 * radius);
    for (int a = 0; a < prob.n(); ++a)
        for (int b = 0; b < prob.n(); ++b)
            if (a != b) gap[a] = std::min(gap[a], std::abs(prob.z[a] - prob.z[b]));

    // heuristic starts: level-1 coordinates from the sl2 sub-problem orbits,
    // higher levels from derivative roots of the level below
    std::vector<std::vector<Cplx>> heuristics;
    {
        try {
            MasterProblem sub{prob.M, prob.z, prob.k[0]};
            sub.validate();
            SolverConfig sub_cfg = cfg;
            sub_cfg.exhaustive = false;
            sub_cfg.max_starts = 50 * std::max(expected_orbit_count(sub), 1L);
            sub_cfg.mode = ExecMode::Serial;
            SolveResult sub_res = solve_orbits(sub, sub_cfg);
            for (const BetheOrbit& o : sub_res.orbits) {
                Leveled t(prob.p - 1);
                t[0] = o.t;
                bool ok = true;
                for (int l = 1; l < prob.p - 1 && ok; ++l) {
                    Poly<Cplx> w = from_roots(t[l - 1]);
                    for (int d = 0; d < prob.k[l - 1] - prob.k[l]; ++d) w = derivative(w);
                    if (w.degree() != prob.k[l]) {
                        ok = false;
                        break;
                    }
                    try {
                        t[l] = prob.k[l] > 0 ? roots_unclustered(w) : std::vector<Cplx>{};
                    } catch (const Error&) {
                        ok = false;
                    }
                }
                if (ok) heuristics.push_back(flatten_t(t));
            }
        } catch (const Error&) {
        }
    }

    std::vector<std::optional<SlpOrbit>> outcomes(budget);
    Rng master(cfg.seed);

    auto merit = [&](const std::vector<Cplx>& x, const Eigen::VectorXcd& r) {
        double s = 0;
        for (int i = 0; i < (int)x.size(); ++i) {
            double w = (1.0 + std::abs(x[i] - center)) * std::abs(r(i));
            s += w * w;
        }
        return std::sqrt(s);
    };

    auto residual_vec = [&](const std::vector<Cplx>& x) -> std::optional<Eigen::VectorXcd> {
        Leveled t = unflatten(prob, flat, x);
        try {
            Leveled r = slp_residual(prob, t);
            Eigen::VectorXcd v(flat.total);
            int pos = 0;
            for (const auto& lvl : r)
                for (const Cplx& c : lvl) v(pos++) = c;
            return v;
        } catch (const OnDiagonal&) {
            return std::nullopt;
        }
    };

    auto run_start = [&](long s) {
        std::vector<Cplx> x;
        if (s < (long)heuristics.size()) {
            x = heuristics[s];
        } else {
            Rng rng = master.derive((std::uint64_t)s);
            x.resize(flat.total);
            for (int l = 0; l < prob.p - 1; ++l) {
                for (int i = 0; i < prob.k[l]; ++i) {
                    Cplx v;
                    if (l == 0) {
                        if (rng.uniform() < 0.25) {
                            v = center + rng.disk(2.0 * radius);
                        } else {
                            long pick = rng.uniform_int(1, prob.total());
                            int zi = 0;
                            for (long acc = prob.M[0]; acc < pick; acc += prob.M[++zi]) {}
                            v = prob.z[zi] + rng.disk(0.75 * gap[zi]);
                        }
                    } else {
                        // anchor near a level-below coordinate
                        int below = (int)rng.uniform_int(0, prob.k[l - 1] - 1);
                        Cplx anchor = x[flat.offsets[l - 1] + below];
                        v = (rng.uniform() < 0.3) ? center + rng.disk(2.0 * radius)
                                                  : anchor + rng.disk(0.5 * (radius + 1.0));
                    }
                    x[flat.offsets[l] + i] = v;
                }
            }
        }
        if ((int)x.size() != flat.total) return;

        const double escape = 20.0 * (radius + 1.0);
        auto rv = residual_vec(x);
        if (!rv) return;
        double rm = merit(x, *rv);
        bool converged = false;
        for (int iter = 0; iter < cfg.max_newton_iter; ++iter) {
            if (rv->norm() < cfg.newton_tol) {
                converged = true;
                break;
            }
            Eigen::MatrixXcd jac = slp_jacobian(prob, flat, unflatten(prob, flat, x));
            Eigen::VectorXcd step = Eigen::PartialPivLU<Eigen::MatrixXcd>(jac).solve(-*rv);
            if (!step.allFinite()) return;
            double lambda = 1.0;
            bool advanced = false;
            for (int halving = 0; halving < 24; ++halving, lambda *= 0.5) {
                std::vector<Cplx> cand = x;
                bool esc = false;
                for (int i = 0; i < flat.total; ++i) {
                    cand[i] += lambda * step(i);
                    if (std::abs(cand[i] - center) > escape) esc = true;
                }
                if (esc) continue;
                auto rc = residual_vec(cand);
                if (!rc) continue;
                double rcm = merit(cand, *rc);
                if (rcm < (1.0 - 1e-4 * lambda) * rm || rc->norm() < cfg.newton_tol) {
                    x.swap(cand);
                    rv = rc;
                    rm = rcm;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) return;
        }
        if (!converged && !(rv->norm() < cfg.newton_tol)) return;

        Leveled t = unflatten(prob, flat, x);
        // configuration-space margins (within level, adjacent levels, z)
        for (int l = 0; l < prob.p - 1; ++l) {
            for (size_t i = 0; i < t[l].size(); ++i) {
                for (size_t j = i + 1; j < t[l].size(); ++j)
                    if (std::abs(t[l][i] - t[l][j]) < cfg.sep_tol) return;
                if (l + 1 < prob.p - 1)
                    for (const Cplx& u : t[l + 1])
                        if (std::abs(t[l][i] - u) < cfg.sep_tol) return;
                if (l == 0)
                    for (const Cplx& zz : prob.z)
                        if (std::abs(t[0][i] - zz) < cfg.sep_tol) return;
            }
        }
        double res = rv->norm();
        if (!(res < cfg.tol)) return;
        double scaled = 0;
        for (int i = 0; i < flat.total; ++i) {
            double w = (1.0 + std::abs(x[i] - center)) * std::abs((*rv)(i));
            scaled += w * w;
        }
        if (!(std::sqrt(scaled) < cfg.tol * (1.0 + radius))) return;

        SlpOrbit o;
        o.t.resize(prob.p - 1);
        for (int l = 0; l < prob.p - 1; ++l) o.t[l] = canonical_coords(t[l], cfg.canonical_round);
        o.residual = res;
        Eigen::MatrixXcd hess = -slp_jacobian(prob, flat, t);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hess);
        o.hessian_min_sv = svd.singularValues()(flat.total - 1);
        o.hessian_norm = svd.singularValues()(0);
        outcomes[s] = std::move(o);
    };

    std::vector<SlpOrbit> orbits;
    long merged_until = 0;
    auto merge_and_check = [&](long end) {
        for (long s = merged_until; s < end; ++s) {
            if (!outcomes[s]) continue;
            const SlpOrbit& o = *outcomes[s];
            bool dup = false;
            for (const SlpOrbit& known : orbits) {
                double worst = 0;
                for (int l = 0; l < prob.p - 1; ++l)
                    worst = std::max(worst, orbit_distance(known.t[l], o.t[l]));
                if (worst < cfg.dedup_tol) {
                    dup = true;
                    break;
                }
            }
            if (!dup) orbits.push_back(o);
        }
        merged_until = end;
        return !cfg.exhaustive && (long)orbits.size() >= result.expected;
    };

    run_multistart(budget, cfg.mode, cfg.threads, run_start, merge_and_check);
    result.starts_used = merged_until;

    std::sort(orbits.begin(), orbits.end(), [](const SlpOrbit& a, const SlpOrbit& b) {
        auto key = [](const Cplx& c) { return std::pair<double, double>(c.real(), c.imag()); };
        for (size_t l = 0; l < a.t.size(); ++l)
            for (size_t i = 0; i < a.t[l].size(); ++i)
                if (key(a.t[l][i]) != key(b.t[l][i])) return key(a.t[l][i]) < key(b.t[l][i]);
        return false;
    });
    result.orbits = std::move(orbits);
    result.complete = ((long)result.orbits.size() == result.expected);
    result.excess = ((long)result.orbits.size() > result.expected);
    result.budget_exhausted = !result.complete && !result.excess;
    return result;
}

// ---------------------------------------------------------------------------
// Wronskian towers

namespace {

template <class K>
WrTower<K> wr_tower_impl(const PolyPlane<K>& V) {
    const int p = V.dim();
    if (p < 1) throw DegeneratePlane("empty plane");
    WrTower<K> tower;
    for (int l = 0; l < p; ++l) {
        std::vector<Poly<K>> tail(V.basis.begin() + l, V.basis.end());
        tower.levels.push_back(wronskian_p(tail));
    }
    // degree law from the basis degrees
    std::vector<int> d(p);
    for (int i = 0; i < p; ++i) d[i] = V.basis[i].degree();
    tower.expected_degrees.resize(p);
    for (int l = 0; l < p; ++l) {
        int s = 0;
        for (int i = l; i < p; ++i) s += d[i];
        tower.expected_degrees[l] = s - (p - l) * (p - l - 1) / 2;
    }
    return tower;
}

Poly<Rational> poly_gcd(Poly<Rational> a, Poly<Rational> b) {
    while (!b.is_zero_poly()) {
        auto [q, r] = divmod(a, b);
        a = b;
        b = r;
    }
    return a.is_zero_poly() ? a : monic(a);
}

} // namespace

WrTower<Rational> wr_tower(const PolyPlane<Rational>& V) {
    WrTower<Rational> tower = wr_tower_impl(V);
    for (size_t l = 0; l + 1 < tower.levels.size(); ++l) {
        Poly<Rational> g = poly_gcd(tower.levels[l], tower.levels[l + 1]);
        if (g.degree() > 0) tower.nondegenerate = false;
    }
    return tower;
}

WrTower<Cplx> wr_tower(const PolyPlane<Cplx>& V, double root_sep) {
    WrTower<Cplx> tower = wr_tower_impl(V);
    for (size_t l = 0; l + 1 < tower.levels.size(); ++l) {
        if (tower.levels[l].degree() < 1 || tower.levels[l + 1].degree() < 1) continue;
        auto ra = roots(tower.levels[l]);
        auto rb = roots(tower.levels[l + 1]);
        for (const Cplx& a : ra)
            for (const Cplx& b : rb)
                if (std::abs(a - b) < root_sep) tower.nondegenerate = false;
    }
    return tower;
}

// ---------------------------------------------------------------------------
// plane <-> orbit, general p

PolyPlane<Cplx> slp_plane_from_orbit(const SlpProblem& prob, const SlpOrbit& orbit) {
    prob.validate(true);
    const int p = prob.p;
    std::vector<int> d = prob.plane_type();
    std::vector<Poly<Cplx>> basis(p);

    // targets: W_0 = target Wronskian, W_l = prod (x - t^{(l)})
    std::vector<Poly<Cplx>> targets(p);
    targets[0] = target_wronskian(prob);
    for (int l = 1; l < p; ++l) targets[l] = from_roots(orbit.t[l - 1]);

    basis[p - 1] = targets[p - 1]; // P_p = Wr_{p-1}
    for (int l = p - 1; l >= 1; --l) {
        // find monic P_l of degree d[l-1] with Wr[P_l, P_{l+1}, ..., P_p] = c W_{l-1}
        const int deg = d[l - 1];
        std::vector<Poly<Cplx>> tail(basis.begin() + l, basis.end());
        std::vector<Poly<Cplx>> basis_wr(deg + 1);
        int maxdeg = targets[l - 1].degree();
        for (int e = 0; e <= deg; ++e) {
            std::vector<Cplx> mono(e + 1, Cplx(0.0));
            mono[e] = Cplx(1.0);
            std::vector<Poly<Cplx>> cols{Poly<Cplx>(mono)};
            cols.insert(cols.end(), tail.begin(), tail.end());
            basis_wr[e] = detail::poly_matrix_det([&] {
                const int l2 = (int)cols.size();
                std::vector<std::vector<Poly<Cplx>>> m(l2, std::vector<Poly<Cplx>>(l2));
                for (int c2 = 0; c2 < l2; ++c2) {
                    m[0][c2] = cols[c2];
                    for (int r2 = 1; r2 < l2; ++r2) m[r2][c2] = derivative(m[r2 - 1][c2]);
                }
                return m;
            }());
            maxdeg = std::max(maxdeg, basis_wr[e].degree());
        }
        const int rows = maxdeg + 1;
        Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(rows, deg + 1);
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(rows);
        for (int r = 0; r < rows; ++r) {
            for (int e = 0; e < deg; ++e) a(r, e) = basis_wr[e].coeff(r);
            a(r, deg) = -targets[l - 1].coeff(r);
            rhs(r) = -basis_wr[deg].coeff(r);
        }
        Eigen::VectorXcd sol = a.colPivHouseholderQr().solve(rhs);
        double rel = (a * sol - rhs).norm() / std::max(rhs.norm(), 1.0);
        if (!(rel < 1e-7))
            throw ReconstructionFailed("level " + std::to_string(l) +
                                       " linear system residual " + std::to_string(rel));
        if (std::abs(sol(deg)) < 1e-12)
            throw ReconstructionFailed("degenerate scalar at level " + std::to_string(l));
        std::vector<Cplx> pc(deg + 1, Cplx(0.0));
        for (int e = 0; e < deg; ++e) pc[e] = sol(e);
        pc[deg] = Cplx(1.0);
        basis[l - 1] = Poly<Cplx>(std::move(pc));
    }
    PolyPlane<Cplx> plane = canonical_plane<Cplx>(basis);
    // verify the tower roots reproduce the orbit
    WrTower<Cplx> tower = wr_tower(plane);
    for (int l = 1; l < p; ++l) {
        if (tower.levels[l].degree() != (l <= p - 1 ? (l - 1 < (int)prob.k.size() ? prob.k[l - 1] : 0) : 0))
            throw ReconstructionFailed("tower degree mismatch at level " + std::to_string(l));
        if (prob.k[l - 1] == 0) continue;
        std::vector<Cplx> r = roots(tower.levels[l]);
        if (orbit_distance(r, orbit.t[l - 1]) > 1e-6)
            throw ReconstructionFailed("tower roots do not match the orbit at level " +
                                       std::to_string(l));
    }
    return plane;
}

SlpOrbit slp_orbit_from_plane(const PolyPlane<Cplx>& V, const SlpProblem& prob) {
    prob.validate(true);
    if (V.dim() != prob.p) throw DegeneratePlane("plane dimension != p");
    WrTower<Cplx> tower = wr_tower(V);
    if (!tower.nondegenerate) throw DegeneratePlane("adjacent tower levels share a root");

    Poly<Cplx> W = target_wronskian(prob);
    double scale = std::max(W.max_abs(), 1.0);
    if (tower.levels[0].degree() != W.degree())
        throw DegeneratePlane("tower Wronskian has wrong degree");
    for (int i = 0; i <= W.degree(); ++i)
        if (std::abs(tower.levels[0].coeff(i) - W.coeff(i)) > 1e-7 * scale)
            throw DegeneratePlane("tower Wronskian differs from the target");

    SlpOrbit orbit;
    orbit.t.resize(prob.p - 1);
    for (int l = 1; l < prob.p; ++l) {
        if (tower.levels[l].degree() != prob.k[l - 1])
            throw DegeneratePlane("tower level degree != k_l");
        orbit.t[l - 1] = prob.k[l - 1] > 0 ? roots(tower.levels[l]) : std::vector<Cplx>{};
        orbit.t[l - 1] = canonical_coords(orbit.t[l - 1], 1e-8);
    }
    Leveled r = slp_residual(prob, orbit.t);
    orbit.residual = leveled_norm(r);
    if (!(orbit.residual < 1e-7)) throw DegeneratePlane("tower roots are not a critical point");
    return orbit;
}

// ---------------------------------------------------------------------------
// Fuchsian reduction (n = 2, z = (0,1))

FuchsianForm fuchsian_reduce(const PolyPlane<Rational>& V, int m1, int m2) {
    const int p = V.dim();
    if (p < 2) throw ReductionFailed("need p >= 2");

    // minors of the (p+1) x p derivative matrix of the basis
    std::vector<std::vector<Poly<Rational>>> all_rows(p + 1, std::vector<Poly<Rational>>(p));
    for (int c = 0; c < p; ++c) {
        all_rows[0][c] = V.basis[c];
        for (int r = 1; r <= p; ++r) all_rows[r][c] = derivative(all_rows[r - 1][c]);
    }
    std::vector<Poly<Rational>> coeff(p + 1); // coefficient of u^{(r)}
    for (int r = 0; r <= p; ++r) {
        std::vector<std::vector<Poly<Rational>>> minor;
        for (int i = 0; i <= p; ++i)
            if (i != r) minor.push_back(all_rows[i]);
        Poly<Rational> det = detail::poly_matrix_det(minor);
        coeff[r] = (r % 2 == 0) ? det : -det;
    }
    if (coeff[p].is_zero_poly()) throw ReductionFailed("leading coefficient vanished");

    // the leading coefficient is the plane Wronskian, proportional to W
    Poly<Rational> W = Poly<Rational>::constant(Rational(1));
    Poly<Rational> x = Poly<Rational>::x();
    for (int e = 0; e < m1; ++e) W = W * x;
    for (int e = 0; e < m2; ++e) W = W * (x - Poly<Rational>::constant(Rational(1)));
    if (monic(coeff[p]) == W) {
        // ok
    } else {
        throw ReductionFailed("plane Wronskian is not x^{m1} (x-1)^{m2}");
    }

    // divide everything by x^{m1-1} (x-1)^{m2-1}, exactly
    Poly<Rational> common = Poly<Rational>::constant(Rational(1));
    for (int e = 0; e + 1 < m1; ++e) common = common * x;
    for (int e = 0; e + 1 < m2; ++e) common = common * (x - Poly<Rational>::constant(Rational(1)));
    FuchsianForm out;
    out.reduced.resize(p + 1);
    for (int r = 0; r <= p; ++r) {
        if (coeff[r].is_zero_poly()) {
            out.reduced[r] = coeff[r];
            continue;
        }
        auto [q, rem] = divmod(coeff[r], common);
        if (!rem.is_zero_poly())
            throw ReductionFailed("coefficient of u^(" + std::to_string(r) +
                                  ") not divisible by the common factor");
        out.reduced[r] = q;
    }
    // normalize so the u^(p) coefficient is exactly x(x-1)
    Rational gamma = out.reduced[p].lc();
    for (int r = 0; r <= p; ++r) {
        if (out.reduced[r].is_zero_poly()) continue;
        Rational inv = gamma;
        std::vector<Rational> c = out.reduced[r].c;
        for (auto& v : c) v /= inv;
        out.reduced[r] = Poly<Rational>(std::move(c));
    }
    Poly<Rational> xx1 = x * x - x;
    if (!(out.reduced[p] == xx1)) throw ReductionFailed("leading coefficient is not x(x-1)");

    for (int r = 0; r <= p - 3; ++r)
        if (!out.reduced[r].is_zero_poly())
            throw ReductionFailed("coefficient of u^(" + std::to_string(r) +
                                  ") does not vanish (falsifies the reduction)");
    if (out.reduced[p - 1].degree() > 1)
        throw ReductionFailed("u^(p-1) coefficient has degree > 1");
    out.A = out.reduced[p - 1].coeff(1);
    out.B = out.reduced[p - 1].coeff(0);
    if (p >= 2) {
        const Poly<Rational>& cp2 = out.reduced[p - 2];
        if (cp2.degree() > 0) throw ReductionFailed("u^(p-2) coefficient is not constant");
        out.C = cp2.coeff(0);
    }
    return out;
}

Poly<Rational> indicial_polynomial(const std::vector<Poly<Rational>>& ode, const Rational& x0) {
    // shift to y = x - x0 and pick up the lowest order nu = min(j - r);
    // I(s) = sum_{j - r = nu} c_{r,j} s (s-1) ... (s-r+1)
    const int pmax = (int)ode.size() - 1;
    long nu = 1000000;
    std::vector<Poly<Rational>> shifted(pmax + 1);
    for (int r = 0; r <= pmax; ++r) {
        if (ode[r].is_zero_poly()) continue;
        shifted[r] = shift(ode[r], x0);
        for (int j = 0; j <= shifted[r].degree(); ++j)
            if (!is_zero(shifted[r].coeff(j))) nu = std::min(nu, (long)j - r);
    }
    Poly<Rational> indicial;
    for (int r = 0; r <= pmax; ++r) {
        if (shifted[r].is_zero_poly()) continue;
        long j = nu + r;
        if (j < 0 || j > shifted[r].degree()) continue;
        Rational c = shifted[r].coeff((int)j);
        if (is_zero(c)) continue;
        // falling factorial s(s-1)...(s-r+1)
        Poly<Rational> fall = Poly<Rational>::constant(Rational(1));
        for (int q = 0; q < r; ++q)
            fall = fall * Poly<Rational>(std::vector<Rational>{Rational(-q), Rational(1)});
        indicial = indicial + c * fall;
    }
    return indicial;
}

Poly<Rational> hypergeometric_bethe_polynomial(int m1, int m2, int k) {
    if (k < 0 || 2 * k > m1 + m2) throw WeightMismatch("need 0 <= 2k <= m1 + m2");
    const long total = m1 + m2;
    std::vector<Rational> f(k + 1, Rational(0));
    f[k] = 1;
    for (int j = k - 1; j >= 0; --j) {
        // f_j [ (j-k)(j-(|M|+1-k)) ] + f_{j+1} (j+1)(m1-j) = 0
        Rational denom = Rational((long)(j - k)) * Rational((long)j - (total + 1 - k));
        f[j] = -f[j + 1] * Rational((long)(j + 1) * (m1 - j)) / denom;
    }
    return Poly<Rational>(std::move(f));
}

PolyPlane<Rational> exact_two_point_plane(int p, int m1, int m2, int k1) {
    if (p < 2) throw WeightMismatch("p >= 2");
    if (k1 < 0 || k1 > std::min(m1, m2)) throw WeightMismatch("need 0 <= k1 <= min(m1, m2)");
    Poly<Rational> x = Poly<Rational>::x();
    Poly<Rational> W = Poly<Rational>::constant(Rational(1));
    for (int e = 0; e < m1; ++e) W = W * x;
    for (int e = 0; e < m2; ++e) W = W * (x - Poly<Rational>::constant(Rational(1)));

    Poly<Rational> F = hypergeometric_bethe_polynomial(m1, m2, k1);
    auto G = partner_from_linear_system(W, F, m1 + m2 + 1 - k1);
    if (!G) throw ReconstructionFailed("no exact partner (k1 outside the Pieri range?)");

    std::vector<Poly<Rational>> basis;
    Poly<Rational> top1 = *G, top2 = F;
    for (int e = 0; e < p - 2; ++e) {
        top1 = antiderivative(top1);
        top2 = antiderivative(top2);
    }
    basis.push_back(monic(top1));
    basis.push_back(monic(top2));
    for (int e = p - 3; e >= 0; --e) {
        std::vector<Rational> mono(e + 1, Rational(0));
        mono[e] = 1;
        basis.push_back(Poly<Rational>(std::move(mono)));
    }
    return canonical_plane<Rational>(basis);
}

} // namespace bw
