#include "bw/gaudin.hpp"

#include <map>

#include "bw/exact_linalg.hpp"

namespace bw {

namespace {

RatVector block_coords(const TensorState<Rational>& v, const std::map<MultiIndex, int>& index, int dim) {
    RatVector out(dim, Rational(0));
    for (const auto& [J, c] : v.entries) out[index.at(J)] = c;
    return out;
}

} // namespace

GaudinChecks verify_gaudin_exact(const std::vector<int>& M, const std::vector<Rational>& z) {
    GaudinSystem<Rational> sys = build_hamiltonians(M, z);
    const int n = (int)M.size();
    int total = 0;
    for (int m : M) total += m;

    GaudinChecks out;
    for (int k = 0; k <= total; ++k) {
        auto block = weight_block_basis(M, k);
        if (block.empty()) continue;
        const int dim = (int)block.size();
        out.block_dims.push_back(dim);
        std::map<MultiIndex, int> index;
        for (int a = 0; a < dim; ++a) index[block[a]] = a;

        // H_i applied to every block basis vector
        std::vector<std::vector<TensorState<Rational>>> h(n, std::vector<TensorState<Rational>>(dim));
        for (int a = 0; a < dim; ++a) {
            TensorState<Rational> e;
            e.M = M;
            e.entries[block[a]] = Rational(1);
            for (int i = 0; i < n; ++i) h[i][a] = sys.apply(i, e);
        }

        // sum_i H_i = 0
        for (int a = 0; a < dim && out.sum_zero; ++a) {
            TensorState<Rational> s;
            s.M = M;
            for (int i = 0; i < n; ++i)
                for (const auto& [J, c] : h[i][a].entries) s.add(J, c);
            if (!s.is_zero_state()) out.sum_zero = false;
        }

        // [H_i, H_j] = 0
        for (int i = 0; i < n && out.commutators_zero; ++i) {
            for (int j = i + 1; j < n && out.commutators_zero; ++j) {
                for (int a = 0; a < dim; ++a) {
                    TensorState<Rational> ij = sys.apply(i, h[j][a]);
                    TensorState<Rational> ji = sys.apply(j, h[i][a]);
                    for (const auto& [J, c] : ji.entries) ij.add(J, -c);
                    if (!ij.is_zero_state()) {
                        out.commutators_zero = false;
                        break;
                    }
                }
            }
        }

        // S(H_i e_a, e_b) = S(e_a, H_i e_b): with diagonal S this reads
        // norm_b (H_i e_a)[b] == norm_a (H_i e_b)[a]
        std::vector<Rational> norms(dim);
        for (int a = 0; a < dim; ++a) norms[a] = Rational(shapovalov_norm_int(M, block[a]));
        for (int i = 0; i < n && out.shapovalov_symmetric; ++i) {
            for (int a = 0; a < dim && out.shapovalov_symmetric; ++a) {
                for (const auto& [J, c] : h[i][a].entries) {
                    int b = index.at(J);
                    Rational other(0);
                    auto it = h[i][b].entries.find(block[a]);
                    if (it != h[i][b].entries.end()) other = it->second;
                    if (norms[b] * c != norms[a] * other) {
                        out.shapovalov_symmetric = false;
                        break;
                    }
                }
            }
        }

        // H_i maps Sing_k into the span of sing_basis (exact elimination)
        if (2 * k <= total) {
            auto sing = sing_basis({M, k});
            if (!sing.empty()) {
                std::vector<RatVector> span;
                for (const auto& s : sing) span.push_back(block_coords(s, index, dim));
                for (int i = 0; i < n && out.sing_preserved; ++i) {
                    for (const auto& s : sing) {
                        TensorState<Rational> hs = sys.apply(i, s);
                        if (!in_span(span, block_coords(hs, index, dim))) {
                            out.sing_preserved = false;
                            break;
                        }
                    }
                }
            }
        }
    }
    return out;
}

} // namespace bw
