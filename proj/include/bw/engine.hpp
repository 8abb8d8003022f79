#pragma once

// Multistart execution engine. Starts are independent and side-effect-free,
// so they run either serially (the reference path) or under OpenMP. Work is
// issued in fixed-size batches; the early-stop predicate is consulted only
// at batch boundaries, so the set of executed starts -- and therefore every
// downstream result -- is identical for any thread count. Tests and the
// benchmark target compare the two paths.

#include <functional>

namespace bw {

enum class ExecMode { Serial, Parallel };

// OpenMP worker cap: min(hardware, BW_THREADS env var, `requested` if > 0).
int effective_threads(int requested = 0);

inline constexpr long kMultistartBatch = 64;

// Runs work(s) for s in [0, budget); after each batch, stop_after_batch(end)
// reports the index reached and may halt further batches.
void run_multistart(long budget, ExecMode mode, int threads,
                    const std::function<void(long)>& work,
                    const std::function<bool(long)>& stop_after_batch);

} // namespace bw
