// Benchmark: multistart solver, serial reference vs OpenMP path, on a fixed
// set of instances. The two paths must produce identical orbit sets; the
// table reports wall times and speedup.

#include <chrono>
#include <cstdio>
#include <vector>

#include "bw/bethe.hpp"
#include "bw/engine.hpp"

using namespace bw;

namespace {

double wall(const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main() {
    struct Case {
        const char* name;
        MasterProblem prob;
    };
    std::vector<Case> cases{
        {"M=(1,1,1,1) k=2", {{1, 1, 1, 1}, {Cplx(-3), Cplx(1), Cplx(4), Cplx(11)}, 2}},
        {"M=(2,2,2) k=3", {{2, 2, 2}, {Cplx(-5), Cplx(0), Cplx(7)}, 3}},
        {"M=(3,3,2) k=4", {{3, 3, 2}, {Cplx(-9), Cplx(2), Cplx(6)}, 4}},
        {"M=(2,2,2,2) k=4", {{2, 2, 2, 2}, {Cplx(-11), Cplx(-2), Cplx(3), Cplx(9)}, 4}},
    };

    std::printf("%-20s %8s %10s %10s %8s %s\n", "instance", "orbits", "serial[s]", "openmp[s]",
                "speedup", "identical");
    for (auto& c : cases) {
        SolverConfig serial;
        serial.seed = 2026;
        serial.mode = ExecMode::Serial;
        serial.exhaustive = true; // fixed workload: no early stop
        SolverConfig parallel = serial;
        parallel.mode = ExecMode::Parallel;

        SolveResult rs, rp;
        double ts = wall([&] { rs = solve_orbits(c.prob, serial); });
        double tp = wall([&] { rp = solve_orbits(c.prob, parallel); });

        bool same = rs.orbits.size() == rp.orbits.size();
        for (size_t i = 0; same && i < rs.orbits.size(); ++i)
            for (size_t j = 0; same && j < rs.orbits[i].t.size(); ++j)
                same = rs.orbits[i].t[j] == rp.orbits[i].t[j];

        std::printf("%-20s %8zu %10.3f %10.3f %7.2fx %s\n", c.name, rs.orbits.size(), ts, tp,
                    ts / tp, same ? "yes" : "NO");
    }
    return 0;
}
