#pragma once

// Gaudin Hamiltonians H_i(z) = sum_{j != i} Omega_ij / (z_i - z_j) acting on
// L^{(x)M} in the f^J v_M basis, generic over the scalar kind: exact rational
// z for the algebraic property checks, complex z for the Bethe interop.
//
// Omega = e(x)f + f(x)e + 1/2 h(x)h acts on one pair of factors; everything
// here is sparse and block-diagonal in the total h-weight, so verifications
// run per weight block.

#include <vector>

#include "bw/errors.hpp"
#include "bw/sl2.hpp"

namespace bw {

template <class K>
TensorState<K> casimir_pair(int i, int j, const TensorState<K>& v) {
    const int n = (int)v.M.size();
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw IndexError("casimir_pair: bad factor indices");
    const auto& M = v.M;
    TensorState<K> out;
    out.M = M;
    const K half = K(1) / K(2);
    for (const auto& [J, c] : v.entries) {
        // 1/2 h (x) h
        out.add(J, half * K((long)(M[i] - 2 * J[i]) * (M[j] - 2 * J[j])) * c);
        // e on factor i, f on factor j
        if (J[i] > 0 && J[j] < M[j]) {
            MultiIndex t = J;
            t[i] -= 1;
            t[j] += 1;
            out.add(t, K((long)J[i] * (M[i] - J[i] + 1)) * c);
        }
        // f on factor i, e on factor j
        if (J[j] > 0 && J[i] < M[i]) {
            MultiIndex t = J;
            t[i] += 1;
            t[j] -= 1;
            out.add(t, K((long)J[j] * (M[j] - J[j] + 1)) * c);
        }
    }
    return out;
}

template <class K>
struct GaudinSystem {
    std::vector<int> M;
    std::vector<K> z;

    int n() const { return (int)M.size(); }

    TensorState<K> apply(int i, const TensorState<K>& v) const {
        TensorState<K> out;
        out.M = M;
        for (int j = 0; j < n(); ++j) {
            if (j == i) continue;
            TensorState<K> o = casimir_pair(i, j, v);
            K inv = K(1) / (z[i] - z[j]);
            for (const auto& [J, c] : o.entries) out.add(J, inv * c);
        }
        return out;
    }
};

template <class K>
GaudinSystem<K> build_hamiltonians(const std::vector<int>& M, const std::vector<K>& z) {
    if (M.size() != z.size()) throw WeightMismatch("build_hamiltonians: |M| != |z|");
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = i + 1; j < z.size(); ++j)
            if (is_zero(z[i] - z[j])) throw CoincidingPoints("z_i = z_j");
    return GaudinSystem<K>{M, z};
}

// max_i ||H_i w - lambda_i w||_2 / ||w||_2 in the Euclidean coefficient norm
template <class K>
double eigen_residual(const GaudinSystem<K>& sys, const TensorState<K>& w, const std::vector<K>& lambdas) {
    if (w.is_zero_state()) throw ZeroVector("eigen_residual: w = 0");
    if ((int)lambdas.size() != sys.n()) throw WeightMismatch("eigen_residual: need n eigenvalues");
    double norm = w.euclid_norm();
    double worst = 0;
    for (int i = 0; i < sys.n(); ++i) {
        TensorState<K> r = sys.apply(i, w);
        for (const auto& [J, c] : w.entries) r.add(J, -(lambdas[i] * c));
        worst = std::max(worst, r.euclid_norm() / norm);
    }
    return worst;
}

// Exact algebraic verification used by the CLI and the acceptance suite.
struct GaudinChecks {
    bool commutators_zero = true;
    bool sum_zero = true;
    bool shapovalov_symmetric = true;
    bool sing_preserved = true;
    std::vector<long> block_dims;
};

GaudinChecks verify_gaudin_exact(const std::vector<int>& M, const std::vector<Rational>& z);

} // namespace bw
