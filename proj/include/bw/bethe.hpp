#pragma once

// The sl2 master function, its critical-point (Bethe) system, a seeded
// multistart Newton solver producing canonical orbits, and Bethe vectors
// with their Gaudin eigenvalues.

#include <cstdint>
#include <vector>

#include "bw/engine.hpp"
#include "bw/errors.hpp"
#include "bw/gaudin.hpp"
#include "bw/sl2.hpp"

namespace bw {

struct MasterProblem {
    std::vector<int> M;  // positive highest weights
    std::vector<Cplx> z; // pairwise distinct marked points
    int k = 0;           // number of Bethe variables, 2k <= |M|

    int n() const { return (int)M.size(); }
    int total() const {
        int s = 0;
        for (int m : M) s += m;
        return s;
    }
    void validate() const;
};

struct SolverConfig {
    std::uint64_t seed = 0;
    double tol = 1e-10;      // orbit residual acceptance
    long max_starts = 0;     // 0: 200 * max(1, expected count)
    bool exhaustive = false; // no early stop, 5x the standard budget
    ExecMode mode = ExecMode::Parallel;
    int threads = 0;         // 0: auto (BW_THREADS-capped)
    double newton_tol = 1e-13;
    int max_newton_iter = 80;
    double sep_tol = 1e-6;   // reject solutions this close to z or to each other
    double dedup_tol = 1e-6;
    double canonical_round = 1e-8;
};

struct BetheOrbit {
    std::vector<Cplx> t;  // canonical: sorted by (re, im) after rounding
    double residual = 0;
    double hessian_min_sv = 1; // smallest singular value of Hess log Phi
    double hessian_norm = 1;   // largest singular value
};

struct SolveResult {
    std::vector<BetheOrbit> orbits;
    long expected = 0; // dim Sing_k
    bool complete = false;
    bool excess = false;           // more orbits than dim Sing_k: parasite candidates
    bool budget_exhausted = false; // stopped short of the expected count
    long starts_used = 0;
};

// Phi(t) = prod_i prod_l (t_i - z_l)^{-m_l} * prod_{i<j} (t_i - t_j)^2
Cplx master_value(const MasterProblem& p, const std::vector<Cplx>& t);

// component i: sum_l m_l/(t_i - z_l) - sum_{j != i} 2/(t_i - t_j)
// (the gradient of log Phi up to sign; zero exactly at critical points)
std::vector<Cplx> bethe_residual(const MasterProblem& p, const std::vector<Cplx>& t);

// Hessian of log Phi at t, row-major k x k
std::vector<std::vector<Cplx>> hessian_log_phi(const MasterProblem& p, const std::vector<Cplx>& t);

// smallest/largest singular value of a complex square matrix
std::pair<double, double> singular_value_range(const std::vector<std::vector<Cplx>>& m);

// dim Sing_k: formula for n >= 2, exact kernel otherwise
long expected_orbit_count(const MasterProblem& p);

std::vector<Cplx> canonical_coords(std::vector<Cplx> t, double round_to);

// multiset distance between two coordinate lists (min over pairings of the
// worst coordinate gap); the solver dedups orbits with this
double orbit_distance(const std::vector<Cplx>& a, const std::vector<Cplx>& b);

// a few undamped Newton steps from an in-basin point (e.g. roots extracted
// from a plane); returns the input unchanged if a step fails
std::vector<Cplx> polish_coordinates(const MasterProblem& p, std::vector<Cplx> t, int max_iter = 24);

SolveResult solve_orbits(const MasterProblem& p, const SolverConfig& cfg = {});

// symmetrized coefficient A_J(t, z); the two evaluation paths are
// cross-tested against each other (direct S_k sum vs assignment sum)
Cplx a_coefficient_direct(const MultiIndex& J, const std::vector<Cplx>& t, const std::vector<Cplx>& z);
Cplx a_coefficient_assignments(const MultiIndex& J, const std::vector<Cplx>& t, const std::vector<Cplx>& z);

// w(t0, z) = sum_{|J| = k} A_J f^J v_M
TensorState<Cplx> bethe_vector(const MasterProblem& p, const BetheOrbit& orbit);

// lambda_i = sum_{j != i} m_i m_j / (2 (z_i - z_j)) + sum_a m_i / (t_a - z_i)
std::vector<Cplx> bethe_eigenvalues(const MasterProblem& p, const BetheOrbit& orbit);

} // namespace bw
