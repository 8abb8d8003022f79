#include "bw/schubert.hpp"

#include <algorithm>
#include <functional>

namespace bw {

BoxPartition::BoxPartition(std::vector<int> p, const Box& box) : parts(std::move(p)) {
    if ((int)parts.size() > box.rows) throw BoxMismatch("partition longer than box rows");
    parts.resize(box.rows, 0);
    for (size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 0 || parts[i] > box.cols) throw BoxMismatch("part outside box");
        if (i > 0 && parts[i] > parts[i - 1]) throw BoxMismatch("parts not weakly decreasing");
    }
}

CohomologyElement CohomologyElement::unit(const Box& box) {
    CohomologyElement e;
    e.box = box;
    e.terms[BoxPartition({}, box)] = 1;
    return e;
}

void CohomologyElement::add(const BoxPartition& p, const BigInt& mult) {
    if (mult == 0) return;
    auto it = terms.find(p);
    if (it == terms.end()) {
        terms.emplace(p, mult);
    } else {
        it->second += mult;
        if (it->second == 0) terms.erase(it);
    }
}

BigInt CohomologyElement::coefficient(const BoxPartition& p) const {
    auto it = terms.find(p);
    return it == terms.end() ? BigInt(0) : it->second;
}

CohomologyElement pieri_multiply(const CohomologyElement& elem, int q) {
    const Box& box = elem.box;
    if (q < 0 || q > box.cols) throw QOutOfRange("q = " + std::to_string(q));
    CohomologyElement out;
    out.box = box;
    for (const auto& [lambda, mult] : elem.terms) {
        // horizontal strips: mu_1 >= lambda_1 >= mu_2 >= lambda_2 >= ...
        // enumerate row increments recursively
        std::vector<int> mu(box.rows);
        std::function<void(int, int)> rec = [&](int row, int remaining) {
            if (row == box.rows) {
                if (remaining == 0) out.add(BoxPartition(mu, box), mult);
                return;
            }
            int lo = lambda.parts[row];
            int hi = (row == 0) ? box.cols : lambda.parts[row - 1];
            for (int v = lo; v <= hi && v - lo <= remaining; ++v) {
                mu[row] = v;
                rec(row + 1, remaining - (v - lo));
            }
        };
        rec(0, q);
    }
    return out;
}

BigInt intersection_number(const std::vector<int>& qs, const Box& box) {
    long total = 0;
    for (int q : qs) total += q;
    if (total != (long)box.rows * box.cols)
        throw CodimensionMismatch("sum of codimensions " + std::to_string(total) + " != " +
                                  std::to_string(box.rows * box.cols));
    CohomologyElement e = CohomologyElement::unit(box);
    for (int q : qs) e = pieri_multiply(e, q);
    BoxPartition top(std::vector<int>(box.rows, box.cols), box);
    return e.coefficient(top);
}

BigInt intersection_number_formula(const std::vector<int>& qs, int d) {
    const int n = (int)qs.size() - 1;
    if (n < 2) throw NTooSmall("formula needs at least 3 classes (n >= 2)");
    long total = 0;
    for (int q : qs) {
        if (q < 0 || q > d - 1)
            throw HypothesisViolated("q out of range [0, d-1]: " + std::to_string(q));
        total += q;
    }
    if (total != 2L * d - 2)
        throw HypothesisViolated("sum q_i = " + std::to_string(total) + " != 2d-2");

    BigInt acc = 0;
    // subsets of the first n indices (the last class is distinguished)
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        int l = __builtin_popcount(mask);
        long s = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s += qs[i];
        BigInt term = binomial_zero_below(s + l - d - 1, n - 2);
        if ((n - l) % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

BigInt dual_pairing(const CohomologyElement& a, const CohomologyElement& b) {
    if (!(a.box == b.box)) throw BoxMismatch("dual_pairing: different boxes");
    const Box& box = a.box;
    BigInt acc = 0;
    for (const auto& [lambda, ca] : a.terms) {
        std::vector<int> comp(box.rows);
        for (int i = 0; i < box.rows; ++i) comp[i] = box.cols - lambda.parts[box.rows - 1 - i];
        acc += ca * b.coefficient(BoxPartition(comp, box));
    }
    return acc;
}

BoxPartition slp_bound_class(const std::vector<int>& k, int d, int p) {
    if ((int)k.size() != p - 1) throw InvalidWeight("k must have length p-1");
    Box box{p, d + 1 - p};
    std::vector<int> w(p);
    w[0] = d + 1 - p - k[p - 2];
    for (int l = 2; l <= p - 1; ++l) w[l - 1] = d + 1 - p - k[p - l - 1] + k[p - l];
    w[p - 1] = 0;
    for (int i = 0; i < p; ++i) {
        if (w[i] < 0 || w[i] > box.cols) throw InvalidWeight("w escapes the box");
        if (i > 0 && w[i] > w[i - 1]) throw InvalidWeight("w not weakly decreasing");
    }
    return BoxPartition(w, box);
}

BigInt slp_upper_bound(const std::vector<int>& M, const std::vector<int>& k, int d, int p) {
    Box box{p, d + 1 - p};
    if (box.cols < 0) throw InvalidWeight("d + 1 - p < 0");
    BoxPartition w = slp_bound_class(k, d, p);
    long codim = w.size();
    for (int m : M) codim += m;
    if (codim != (long)box.rows * box.cols)
        throw InvalidWeight("codimension mismatch: " + std::to_string(codim) + " != " +
                            std::to_string(box.rows * box.cols));
    CohomologyElement e = CohomologyElement::unit(box);
    for (int m : M) {
        if (m < 0) throw QOutOfRange("m_i = " + std::to_string(m));
        if (m > box.cols) return 0; // the special class of that codimension vanishes
        e = pieri_multiply(e, m);
    }
    CohomologyElement sw;
    sw.box = box;
    sw.add(w, 1);
    return dual_pairing(e, sw);
}

} // namespace bw
