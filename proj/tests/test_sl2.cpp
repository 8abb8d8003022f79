#include <doctest.h>

#include "bw/rng.hpp"
#include "bw/sl2.hpp"

using namespace bw;

using RState = TensorState<Rational>;

namespace {

RState basis_state(const std::vector<int>& M, const MultiIndex& j) {
    RState v;
    v.M = M;
    v.entries[j] = Rational(1);
    return v;
}

RState random_state(Rng& rng, const std::vector<int>& M) {
    RState v;
    v.M = M;
    MultiIndex j(M.size(), 0);
    std::function<void(size_t)> rec = [&](size_t pos) {
        if (pos == M.size()) {
            long num = rng.uniform_int(-4, 4);
            if (num != 0) v.entries[j] = make_rational(num, rng.uniform_int(1, 3));
            return;
        }
        for (int val = 0; val <= M[pos]; ++val) {
            j[pos] = val;
            rec(pos + 1);
        }
    };
    rec(0);
    return v;
}

bool states_equal(const RState& a, const RState& b) { return a.entries == b.entries; }

RState scale(const RState& v, const Rational& c) {
    RState out;
    out.M = v.M;
    for (const auto& [j, val] : v.entries) out.add(j, val * c);
    return out;
}

RState sub(const RState& a, const RState& b) {
    RState out = a;
    for (const auto& [j, val] : b.entries) out.add(j, -val);
    return out;
}

} // namespace

TEST_CASE("generator action: pinned values") {
    std::vector<int> M{1, 1};
    // e on f^{(1,0)} v -> f^{(0,0)} v
    RState v = basis_state(M, {1, 0});
    RState ev = act(Gen::E, v);
    CHECK(states_equal(ev, basis_state(M, {0, 0})));
    // h on f^{(1,1)} v -> -2 f^{(1,1)} v
    RState w = basis_state(M, {1, 1});
    CHECK(states_equal(act(Gen::H, w), scale(w, Rational(-2))));
    // e kills the highest weight vector
    CHECK(act(Gen::E, basis_state(M, {0, 0})).is_zero_state());
}

TEST_CASE("commutation [e,f] = h on random states") {
    Rng rng(3);
    std::vector<std::vector<int>> weights{{1, 1}, {2, 1}, {3, 2}, {1, 1, 2}, {2, 2, 2}, {4, 3, 3}};
    for (const auto& M : weights) {
        RState v = random_state(rng, M);
        RState lhs = sub(act(Gen::E, act(Gen::F, v)), act(Gen::F, act(Gen::E, v)));
        RState rhs = act(Gen::H, v);
        CHECK(states_equal(lhs, rhs));
    }
}

TEST_CASE("shapovalov: pinned values and contravariance") {
    // S(f v_2, f v_2) = 2
    std::vector<int> M2{2};
    CHECK(shapovalov(basis_state(M2, {1}), basis_state(M2, {1})) == Rational(2));
    // S(v_M, v_M) = 1
    std::vector<int> M{1, 1};
    CHECK(shapovalov(basis_state(M, {0, 0}), basis_state(M, {0, 0})) == Rational(1));
    // distinct basis vectors are orthogonal
    CHECK(shapovalov(basis_state(M, {1, 0}), basis_state(M, {0, 1})) == Rational(0));

    Rng rng(17);
    for (const auto& W : std::vector<std::vector<int>>{{2, 1}, {1, 1, 1}, {3, 2}}) {
        RState u = random_state(rng, W);
        RState v = random_state(rng, W);
        CHECK(shapovalov(act(Gen::E, u), v) == shapovalov(u, act(Gen::F, v)));
        CHECK(shapovalov(u, v) == shapovalov(v, u));
    }
}

TEST_CASE("sing_basis: derived examples") {
    // M = (1,1), k = 1: one vector proportional to f^{(1,0)} - f^{(0,1)}
    auto b = sing_basis({{1, 1}, 1});
    REQUIRE(b.size() == 1);
    CHECK(b[0].entries.size() == 2);
    // canonical: first nonzero coordinate (lex J order) equals 1; lex order is (0,1) < (1,0)
    CHECK(b[0].entries.at({0, 1}) == Rational(1));
    CHECK(b[0].entries.at({1, 0}) == Rational(-1));

    CHECK(sing_basis({{1, 1, 1}, 1}).size() == 2);
    CHECK(sing_basis({{5}, 1}).empty());
    CHECK(sing_basis({{5}, 2}).empty());
}

TEST_CASE("sing_basis vectors are singular of the right weight") {
    std::vector<WeightDatum> cases{{{1, 1}, 1}, {{2, 2}, 2}, {{1, 1, 1}, 1}, {{2, 1, 1}, 2}, {{3, 3, 2}, 3}};
    for (const auto& wd : cases) {
        for (const auto& w : sing_basis(wd)) {
            CHECK(act(Gen::E, w).is_zero_state());
            RState hw = act(Gen::H, w);
            RState expect = scale(w, Rational(wd.total() - 2 * wd.k));
            CHECK(states_equal(hw, expect));
        }
    }
}

TEST_CASE("dim_sing_formula: derived examples") {
    CHECK(dim_sing_formula({{1, 1}, 1}) == 1);
    CHECK(dim_sing_formula({{1, 1, 1}, 1}) == 2);
    CHECK(dim_sing_formula({{1, 1}, 0}) == 1);
    CHECK_THROWS_AS(dim_sing_formula({{4}, 1}), NTooSmall);
}

TEST_CASE("multiplicity_trivial: derived examples") {
    CHECK(multiplicity_trivial({1, 1}) == 1);
    CHECK(multiplicity_trivial({1, 1, 1, 1}) == 2);
    CHECK(multiplicity_trivial({2, 2, 2}) == 1);
    CHECK(multiplicity_trivial({2}) == 0);
    CHECK(multiplicity_trivial({}) == 1);
    CHECK(multiplicity_trivial({0, 0}) == 1);
}

TEST_CASE("exhaustive agreement: formula = kernel = tensor multiplicity") {
    // n <= 3 here for speed; the acceptance suite covers n <= 4, |M| <= 10
    std::function<void(std::vector<int>&)> visit = [&](std::vector<int>& M) {
        int total = 0;
        for (int m : M) total += m;
        WeightDatum wd{M, 0};
        for (int k = 0; 2 * k <= total; ++k) {
            wd.k = k;
            long kernel = dim_sing_kernel(wd);
            BigInt mult = multiplicity_trivial([&] {
                std::vector<int> qs = M;
                qs.push_back(total - 2 * k);
                return qs;
            }());
            CHECK(BigInt(kernel) == mult);
            if (M.size() >= 2) CHECK(dim_sing_formula(wd) == BigInt(kernel));
        }
    };
    for (int n = 1; n <= 3; ++n) {
        std::vector<int> M(n);
        std::function<void(int)> rec = [&](int pos) {
            if (pos == n) {
                int total = 0;
                for (int m : M) total += m;
                if (total <= 8) visit(M);
                return;
            }
            for (int m = 1; m <= 4; ++m) {
                M[pos] = m;
                rec(pos + 1);
            }
        };
        rec(0);
    }
}
