#include "bw/exact_linalg.hpp"

#include <algorithm>

namespace bw {

EchelonForm fraction_free_echelon(const RatMatrix& m) {
    EchelonForm ef;
    const int nrows = (int)m.size();
    const int ncols = nrows ? (int)m[0].size() : 0;
    ef.cols = ncols;
    ef.rows.assign(nrows, std::vector<BigInt>(ncols));

    // clear denominators row by row; track the factor for determinants
    for (int i = 0; i < nrows; ++i) {
        BigInt l = 1;
        for (int j = 0; j < ncols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m[i][j].get_den().get_mpz_t());
        for (int j = 0; j < ncols; ++j) {
            Rational scaled = m[i][j] * Rational(l);
            ef.rows[i][j] = scaled.get_num(); // denominator is 1 now
        }
        ef.det_scale *= l;
    }

    BigInt prev = 1;
    int r = 0;
    for (int col = 0; col < ncols && r < nrows; ++col) {
        int piv = -1;
        for (int i = r; i < nrows; ++i)
            if (ef.rows[i][col] != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) {
            std::swap(ef.rows[piv], ef.rows[r]);
            ef.sign = -ef.sign;
        }
        for (int i = r + 1; i < nrows; ++i) {
            for (int j = col + 1; j < ncols; ++j) {
                BigInt t = ef.rows[r][col] * ef.rows[i][j] - ef.rows[i][col] * ef.rows[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                ef.rows[i][j] = t;
            }
            ef.rows[i][col] = 0;
        }
        prev = ef.rows[r][col];
        ef.pivot_cols.push_back(col);
        ++r;
    }
    return ef;
}

int exact_rank(const RatMatrix& m) { return fraction_free_echelon(m).rank(); }

Rational exact_determinant(const RatMatrix& m) {
    const int n = (int)m.size();
    if (n == 0) return Rational(1);
    if ((int)m[0].size() != n) throw Error("exact_determinant: matrix not square");
    EchelonForm ef = fraction_free_echelon(m);
    if (ef.rank() < n) return Rational(0);
    // Bareiss: the final pivot equals the determinant of the integer matrix
    BigInt det_int = ef.rows[n - 1][ef.pivot_cols[n - 1]];
    Rational det = make_rational(det_int, ef.det_scale);
    if (ef.sign < 0) det = -det;
    return det;
}

std::vector<RatVector> rational_rref(std::vector<RatVector> rows) {
    const int nrows = (int)rows.size();
    const int ncols = nrows ? (int)rows[0].size() : 0;
    int r = 0;
    for (int col = 0; col < ncols && r < nrows; ++col) {
        int piv = -1;
        for (int i = r; i < nrows; ++i)
            if (!is_zero(rows[i][col])) { piv = i; break; }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[r]);
        Rational inv = rows[r][col];
        for (int j = col; j < ncols; ++j) rows[r][j] /= inv;
        for (int i = 0; i < nrows; ++i) {
            if (i == r || is_zero(rows[i][col])) continue;
            Rational f = rows[i][col];
            for (int j = col; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

std::vector<RatVector> exact_kernel(const RatMatrix& m) {
    const int nrows = (int)m.size();
    const int ncols = nrows ? (int)m[0].size() : 0;
    if (ncols == 0) return {};
    EchelonForm ef = fraction_free_echelon(m);

    std::vector<bool> is_pivot(ncols, false);
    for (int c : ef.pivot_cols) is_pivot[c] = true;

    std::vector<RatVector> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        RatVector x(ncols, Rational(0));
        x[f] = 1;
        for (int r = ef.rank() - 1; r >= 0; --r) {
            int pc = ef.pivot_cols[r];
            Rational s(0);
            for (int j = pc + 1; j < ncols; ++j)
                if (!is_zero(x[j])) s += Rational(ef.rows[r][j]) * x[j];
            x[pc] = -s / Rational(ef.rows[r][pc]);
        }
        basis.push_back(std::move(x));
    }
    return rational_rref(std::move(basis));
}

std::optional<RatVector> exact_solve(const RatMatrix& a, const RatVector& b) {
    const int nrows = (int)a.size();
    const int ncols = nrows ? (int)a[0].size() : 0;
    RatMatrix aug(nrows, RatVector(ncols + 1));
    for (int i = 0; i < nrows; ++i) {
        for (int j = 0; j < ncols; ++j) aug[i][j] = a[i][j];
        aug[i][ncols] = b[i];
    }
    EchelonForm ef = fraction_free_echelon(aug);
    // inconsistent iff a pivot lands in the augmented column
    for (int c : ef.pivot_cols)
        if (c == ncols) return std::nullopt;

    RatVector x(ncols, Rational(0));
    for (int r = ef.rank() - 1; r >= 0; --r) {
        int pc = ef.pivot_cols[r];
        Rational s = Rational(ef.rows[r][ncols]);
        for (int j = pc + 1; j < ncols; ++j)
            if (!is_zero(x[j])) s -= Rational(ef.rows[r][j]) * x[j];
        x[pc] = s / Rational(ef.rows[r][pc]);
    }
    return x;
}

bool in_span(const std::vector<RatVector>& basis, const RatVector& v) {
    std::vector<RatVector> rows = basis;
    int rank0 = (int)rational_rref(rows).size();
    rows = basis;
    rows.push_back(v);
    int rank1 = (int)rational_rref(rows).size();
    return rank0 == rank1;
}

} // namespace bw
