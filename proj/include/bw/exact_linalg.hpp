#pragma once

// Exact linear algebra over the rationals. Elimination is fraction-free
// (one-step Bareiss over GMP integers after clearing row denominators);
// kernels and solutions are reconstructed in rationals and canonicalized
// so golden tests see one deterministic answer.

#include <optional>
#include <vector>

#include "bw/scalar.hpp"

namespace bw {

using RatMatrix = std::vector<std::vector<Rational>>;
using RatVector = std::vector<Rational>;

struct EchelonForm {
    std::vector<std::vector<BigInt>> rows; // echelon, integer entries
    std::vector<int> pivot_cols;           // one per nonzero row
    int sign = 1;                          // parity of row swaps
    BigInt det_scale = 1;                  // product of row denominator-clearing factors
    int cols = 0;
    int rank() const { return (int)pivot_cols.size(); }
};

EchelonForm fraction_free_echelon(const RatMatrix& m);

int exact_rank(const RatMatrix& m);

// Determinant of a square matrix (fraction-free elimination).
Rational exact_determinant(const RatMatrix& m);

// Canonical (reduced-echelon, leading entry 1) basis of the right kernel.
std::vector<RatVector> exact_kernel(const RatMatrix& m);

// One exact solution of A x = b (free variables set to 0), or nullopt if
// the system is inconsistent.
std::optional<RatVector> exact_solve(const RatMatrix& a, const RatVector& b);

// Reduced row echelon form of a list of rational vectors (rows); used to
// canonicalize kernel bases and to test membership in a span.
std::vector<RatVector> rational_rref(std::vector<RatVector> rows);

// True if v lies in the row span of `basis` (exact).
bool in_span(const std::vector<RatVector>& basis, const RatVector& v);

} // namespace bw
