#pragma once

// Exact Schubert calculus in H*(G_p(C^{d+1})): Pieri multiplication by
// special classes, duality pairing, intersection numbers, and the explicit
// alternating-sum formula for products of special classes (p = 2).
//
// Partitions live in a p x cols box (cols = d+1-p) and are stored padded
// to length p. All coefficients are arbitrary-precision integers.

#include <map>
#include <vector>

#include "bw/errors.hpp"
#include "bw/scalar.hpp"

namespace bw {

struct Box {
    int rows = 0; // p
    int cols = 0; // d + 1 - p
    bool operator==(const Box&) const = default;
};

struct BoxPartition {
    std::vector<int> parts; // weakly decreasing, padded with zeros to length rows

    BoxPartition() = default;
    BoxPartition(std::vector<int> p, const Box& box);

    int size() const {
        int s = 0;
        for (int v : parts) s += v;
        return s;
    }
    bool operator<(const BoxPartition& o) const { return parts < o.parts; }
    bool operator==(const BoxPartition& o) const { return parts == o.parts; }
};

struct CohomologyElement {
    Box box;
    std::map<BoxPartition, BigInt> terms; // zero coefficients absent

    static CohomologyElement unit(const Box& box); // sigma_emptyset
    void add(const BoxPartition& p, const BigInt& mult);
    bool is_zero() const { return terms.empty(); }
    BigInt coefficient(const BoxPartition& p) const;
};

// Pieri rule: multiply by the special class sigma_q (horizontal strips of
// size q inside the box).
CohomologyElement pieri_multiply(const CohomologyElement& elem, int q);

// Coefficient of the full-box class in sigma_{q_1} ... sigma_{q_m}.
// Requires sum q_i = rows * cols.
BigInt intersection_number(const std::vector<int>& qs, const Box& box);

// Eq.-style closed form for sigma_{q_1}...sigma_{q_{n+1}} in G_2(C^{d+1}):
// sum_{l=1}^{n} (-1)^{n-l} sum_{i_1<...<i_l<=n} C(q_{i_1}+...+q_{i_l}+l-d-1, n-2).
// Hypotheses: 0 <= q_i <= d-1, sum q_i = 2d-2, and n >= 2 (NTooSmall below).
BigInt intersection_number_formula(const std::vector<int>& qs, int d);

// Poincare duality pairing: sum_l a[l] * b[l-complement].
BigInt dual_pairing(const CohomologyElement& a, const CohomologyElement& b);

// Upper bound for the number of critical orbits of the sl_p master function:
// the intersection number (prod_i sigma_{m_i}) . sigma_w with
// w_1 = d+1-p-k_{p-1}, w_l = d+1-p-k_{p-l}+k_{p-l+1} (2<=l<=p-1), w_p = 0.
BigInt slp_upper_bound(const std::vector<int>& M, const std::vector<int>& k, int d, int p);

// The sigma_w partition itself (exposed for tests/CLI).
BoxPartition slp_bound_class(const std::vector<int>& k, int d, int p);

} // namespace bw
