#pragma once

// The acceptance sweep: nine property-based criteria with pinned tolerances,
// shared by the `verify-all` CLI subcommand and the acceptance test binary.
// Instances are enumerated deterministically from the seed; sweeps
// parallelize over instances with results merged in enumeration order.

#include <cstdint>
#include <string>
#include <vector>

namespace bw {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 20260808, int threads = 0);

} // namespace bw
