// Acceptance suite: runs every criterion at its pinned tolerance and prints
// one PASS/FAIL line per criterion. Exit code 0 iff all pass.

#include <cstdio>
#include <cstdlib>

#include "bw/verify.hpp"

int main(int argc, char** argv) {
    std::uint64_t seed = 20260808;
    if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
    auto results = bw::run_acceptance(seed, 0);
    bool all = true;
    for (const auto& r : results) {
        std::printf("%s criterion %d: %s — %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str(), r.seconds);
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT");
    return all ? 0 : 1;
}
