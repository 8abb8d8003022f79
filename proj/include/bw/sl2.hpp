#pragma once

// Exact sl2 representation theory on tensor products of irreducibles in
// the f^J v_M basis: generator actions, the Shapovalov form, singular
// vector subspaces (exact kernels), the closed-form dimension count, and
// tensor-product multiplicities as the independent oracle.
//
// Single-factor structure constants, fixed so that f^J v_M is literally
// the working basis:
//   f . f^j v_m = f^{j+1} v_m          (0 beyond j = m)
//   e . f^j v_m = j(m-j+1) f^{j-1} v_m
//   h . f^j v_m = (m-2j)   f^j v_m

#include <map>
#include <vector>

#include "bw/errors.hpp"
#include "bw/exact_linalg.hpp"
#include "bw/scalar.hpp"

namespace bw {

using MultiIndex = std::vector<int>; // 0 <= j_i <= m_i; lexicographic order

enum class Gen { E, F, H };

struct WeightDatum {
    std::vector<int> M; // positive highest weights
    int k = 0;          // 0 <= k <= |M|/2

    int total() const {
        int s = 0;
        for (int m : M) s += m;
        return s;
    }
    int n() const { return (int)M.size(); }
    void validate() const {
        if (M.empty()) throw WeightMismatch("empty weight vector");
        for (int m : M)
            if (m <= 0) throw WeightMismatch("weights must be positive");
        if (k < 0 || 2 * k > total()) throw WeightMismatch("need 0 <= 2k <= |M|");
    }
};

template <class K>
struct TensorState {
    std::vector<int> M;
    std::map<MultiIndex, K> entries; // absent entries are zero

    void add(const MultiIndex& j, const K& v) {
        if (is_zero(v)) return;
        auto it = entries.find(j);
        if (it == entries.end()) {
            entries.emplace(j, v);
        } else {
            it->second = it->second + v;
            if (is_zero(it->second)) entries.erase(it);
        }
    }
    bool is_zero_state() const { return entries.empty(); }

    double euclid_norm() const {
        double s = 0;
        for (const auto& [j, v] : entries) {
            double a = approx_abs(v);
            s += a * a;
        }
        return std::sqrt(s);
    }
};

template <class K>
TensorState<K> act(Gen g, const TensorState<K>& v) {
    TensorState<K> out;
    out.M = v.M;
    const int n = (int)v.M.size();
    for (const auto& [j, coeff] : v.entries) {
        for (int i = 0; i < n; ++i) {
            MultiIndex t = j;
            switch (g) {
                case Gen::F:
                    if (j[i] < v.M[i]) {
                        t[i] = j[i] + 1;
                        out.add(t, coeff);
                    }
                    break;
                case Gen::E:
                    if (j[i] > 0) {
                        t[i] = j[i] - 1;
                        out.add(t, K((long)j[i] * (v.M[i] - j[i] + 1)) * coeff);
                    }
                    break;
                case Gen::H:
                    out.add(j, K((long)(v.M[i] - 2 * j[i])) * coeff);
                    break;
            }
        }
    }
    return out;
}

// Shapovalov square norm of a basis vector: prod_i j_i! m_i! / (m_i - j_i)!
inline BigInt shapovalov_norm_int(const std::vector<int>& M, const MultiIndex& j) {
    BigInt r = 1;
    for (size_t i = 0; i < M.size(); ++i) {
        r *= factorial(j[i]);
        r *= factorial(M[i]) / factorial(M[i] - j[i]);
    }
    return r;
}

template <class K>
K shapovalov(const TensorState<K>& u, const TensorState<K>& v) {
    if (u.M != v.M) throw WeightMismatch("shapovalov: different weight vectors");
    K acc(0);
    for (const auto& [j, cu] : u.entries) {
        auto it = v.entries.find(j);
        if (it == v.entries.end()) continue;
        BigInt norm = shapovalov_norm_int(u.M, j);
        if constexpr (ScalarKind<K>::exact) {
            acc += cu * it->second * Rational(norm);
        } else {
            acc += cu * it->second * K(norm.get_d());
        }
    }
    return acc;
}

// basis of the weight subspace {J : |J| = k}, lexicographically ordered
std::vector<MultiIndex> weight_block_basis(const std::vector<int>& M, int k);

// exact-rational basis of Sing_k, canonical (reduced echelon over the
// lex-ordered block basis, leading coefficient 1); empty when dim = 0
std::vector<TensorState<Rational>> sing_basis(const WeightDatum& wd);

// Theorem-style closed form; throws NTooSmall for n < 2
BigInt dim_sing_formula(const WeightDatum& wd);

// dimension via sing_basis (works for every n)
long dim_sing_kernel(const WeightDatum& wd);

// multiplicity of the trivial module L_0 in L_{q_1} x ... x L_{q_m},
// by iterated Clebsch-Gordan on weight-multiplicity vectors
BigInt multiplicity_trivial(const std::vector<int>& qs);

template <class K>
TensorState<K> to_kind(const TensorState<Rational>& v) {
    if constexpr (ScalarKind<K>::exact) {
        return v;
    } else {
        TensorState<Cplx> out;
        out.M = v.M;
        for (const auto& [j, c] : v.entries) out.entries[j] = to_cplx(c);
        return out;
    }
}

} // namespace bw
