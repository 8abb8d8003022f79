#include "bw/sl2.hpp"

#include <algorithm>
#include <functional>

namespace bw {

std::vector<MultiIndex> weight_block_basis(const std::vector<int>& M, int k) {
    std::vector<MultiIndex> out;
    MultiIndex j(M.size(), 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == (int)M.size()) {
            if (remaining == 0) out.push_back(j);
            return;
        }
        for (int v = 0; v <= std::min(M[pos], remaining); ++v) {
            j[pos] = v;
            rec(pos + 1, remaining - v);
        }
        j[pos] = 0;
    };
    rec(0, k);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TensorState<Rational>> sing_basis(const WeightDatum& wd) {
    wd.validate();
    const auto block = weight_block_basis(wd.M, wd.k);
    if (block.empty()) return {};
    if (wd.k == 0) {
        TensorState<Rational> v;
        v.M = wd.M;
        v.entries[MultiIndex(wd.M.size(), 0)] = Rational(1);
        return {v};
    }
    const auto upper = weight_block_basis(wd.M, wd.k - 1);
    std::map<MultiIndex, int> upper_index;
    for (size_t i = 0; i < upper.size(); ++i) upper_index[upper[i]] = (int)i;

    // matrix of e restricted to the |J| = k block
    RatMatrix mat(upper.size(), RatVector(block.size(), Rational(0)));
    for (size_t col = 0; col < block.size(); ++col) {
        const MultiIndex& j = block[col];
        for (size_t i = 0; i < wd.M.size(); ++i) {
            if (j[i] == 0) continue;
            MultiIndex t = j;
            t[i] -= 1;
            long coeff = (long)j[i] * (wd.M[i] - j[i] + 1);
            mat[upper_index.at(t)][col] += Rational(coeff);
        }
    }
    auto kernel = exact_kernel(mat);
    std::vector<TensorState<Rational>> out;
    for (const auto& vec : kernel) {
        TensorState<Rational> v;
        v.M = wd.M;
        for (size_t i = 0; i < vec.size(); ++i)
            if (!is_zero(vec[i])) v.entries[block[i]] = vec[i];
        out.push_back(std::move(v));
    }
    return out;
}

long dim_sing_kernel(const WeightDatum& wd) { return (long)sing_basis(wd).size(); }

BigInt dim_sing_formula(const WeightDatum& wd) {
    wd.validate();
    const int n = wd.n();
    if (n < 2) throw NTooSmall("dimension formula requires n >= 2");
    if (n > 24) throw Error("dim_sing_formula: n too large for subset enumeration");
    BigInt acc = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int q = __builtin_popcount(mask);
        long s = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s += wd.M[i];
        BigInt term = binomial_zero_below(wd.k + n - 2 - s - q, n - 2);
        if (q % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

BigInt multiplicity_trivial(const std::vector<int>& qs) {
    for (int q : qs)
        if (q < 0) throw WeightMismatch("multiplicity_trivial: negative weight");
    // weight multiplicities on the h-eigenvalue lattice, offset so index 0
    // is the lowest weight
    std::vector<BigInt> mult{BigInt(1)}; // trivial product: weight 0 once
    long lowest = 0;
    for (int q : qs) {
        std::vector<BigInt> next(mult.size() + q, BigInt(0));
        for (size_t i = 0; i < mult.size(); ++i) {
            if (mult[i] == 0) continue;
            for (int j = 0; j <= q; ++j) next[i + j] += mult[i];
        }
        mult.swap(next);
        lowest -= q;
    }
    auto weight_count = [&](long w) -> BigInt {
        long idx2 = w - lowest; // in units of 2 on the even/odd lattice
        if (idx2 % 2 != 0) return 0;
        long idx = idx2 / 2;
        if (idx < 0 || idx >= (long)mult.size()) return 0;
        return mult[idx];
    };
    return weight_count(0) - weight_count(2);
}

} // namespace bw
