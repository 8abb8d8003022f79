#include <doctest.h>

#include <atomic>
#include <sstream>

#include "bw/bethe.hpp"
#include "bw/engine.hpp"
#include "bw/slp.hpp"

using namespace bw;

TEST_CASE("run_multistart executes a deterministic batch prefix") {
    std::vector<int> hits(300, 0);
    std::atomic<long> done{0};
    run_multistart(
        300, ExecMode::Parallel, 0, [&](long s) { hits[s] = 1; done++; },
        [&](long end) { return end >= 128; });
    // exactly the first two batches ran
    for (long s = 0; s < 128; ++s) CHECK(hits[s] == 1);
    for (long s = 128; s < 300; ++s) CHECK(hits[s] == 0);
}

TEST_CASE("solver: serial and parallel paths produce identical orbits") {
    MasterProblem p{{2, 1, 2, 1}, {Cplx(-7.0), Cplx(2.0), Cplx(5.0), Cplx(13.0)}, 3};
    SolverConfig serial;
    serial.seed = 99;
    serial.mode = ExecMode::Serial;
    SolverConfig parallel = serial;
    parallel.mode = ExecMode::Parallel;

    SolveResult a = solve_orbits(p, serial);
    SolveResult b = solve_orbits(p, parallel);
    REQUIRE(a.orbits.size() == b.orbits.size());
    CHECK(a.starts_used == b.starts_used);
    for (size_t i = 0; i < a.orbits.size(); ++i) {
        REQUIRE(a.orbits[i].t.size() == b.orbits[i].t.size());
        for (size_t j = 0; j < a.orbits[i].t.size(); ++j)
            CHECK(a.orbits[i].t[j] == b.orbits[i].t[j]); // bit-identical
        CHECK(a.orbits[i].residual == b.orbits[i].residual);
    }
}

TEST_CASE("solver: identical seed gives identical results, different seed may differ") {
    MasterProblem p{{1, 1, 1}, {Cplx(0.0), Cplx(1.0), Cplx(4.0)}, 1};
    SolverConfig c1;
    c1.seed = 5;
    SolveResult a = solve_orbits(p, c1);
    SolveResult b = solve_orbits(p, c1);
    REQUIRE(a.orbits.size() == b.orbits.size());
    for (size_t i = 0; i < a.orbits.size(); ++i)
        for (size_t j = 0; j < a.orbits[i].t.size(); ++j) CHECK(a.orbits[i].t[j] == b.orbits[i].t[j]);
}

TEST_CASE("slp solver: serial and parallel paths agree") {
    SlpProblem prob;
    prob.p = 3;
    prob.M = {1, 1, 1};
    prob.z = {Cplx(0.0), Cplx(1.0), Cplx(3.0)};
    prob.k = {1, 0};
    SolverConfig serial;
    serial.seed = 42;
    serial.mode = ExecMode::Serial;
    SolverConfig parallel = serial;
    parallel.mode = ExecMode::Parallel;
    SlpSolveResult a = slp_solve_orbits(prob, serial);
    SlpSolveResult b = slp_solve_orbits(prob, parallel);
    REQUIRE(a.orbits.size() == b.orbits.size());
    for (size_t i = 0; i < a.orbits.size(); ++i)
        for (size_t l = 0; l < a.orbits[i].t.size(); ++l)
            for (size_t j = 0; j < a.orbits[i].t[l].size(); ++j)
                CHECK(a.orbits[i].t[l][j] == b.orbits[i].t[l][j]);
}
