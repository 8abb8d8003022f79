#pragma once

#include <vector>

#include "bw/polynomial.hpp"

namespace bw {

struct RootConfig {
    double tolerance = 1e-12; // accept when |f(r)| / (1 + max|coeff|) < tolerance
    int max_iterations = 400;
};

// All complex roots with multiplicity (Aberth-Ehrlich simultaneous iteration
// with a Newton polish). Roots closer than 10*sqrt(tolerance) are clustered
// and reported as their centroid with multiplicity.
std::vector<Cplx> roots(const Poly<Cplx>& f, const RootConfig& cfg = {});

// raw roots before multiplicity clustering
std::vector<Cplx> roots_unclustered(const Poly<Cplx>& f, const RootConfig& cfg = {});

} // namespace bw
