#include "bw/engine.hpp"

#include <algorithm>
#include <cstdlib>

#include <omp.h>

namespace bw {

int effective_threads(int requested) {
    int n = omp_get_max_threads();
    if (const char* env = std::getenv("BW_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    if (requested > 0) n = std::min(n, requested);
    return std::max(n, 1);
}

void run_multistart(long budget, ExecMode mode, int threads,
                    const std::function<void(long)>& work,
                    const std::function<bool(long)>& stop_after_batch) {
    const int nthreads = effective_threads(threads);
    for (long base = 0; base < budget; base += kMultistartBatch) {
        const long end = std::min(base + kMultistartBatch, budget);
        if (mode == ExecMode::Parallel && nthreads > 1) {
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
            for (long s = base; s < end; ++s) work(s);
        } else {
            for (long s = base; s < end; ++s) work(s);
        }
        if (stop_after_batch(end)) return;
    }
}

} // namespace bw
