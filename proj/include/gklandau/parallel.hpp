#pragma once

#include <functional>

namespace gkl {

// Number of worker threads: GKLANDAU_THREADS if set, else hardware count.
int thread_count();

// Runs fn(i) for i in [0, n) across the worker pool. Results must be written
// to disjoint slots so the schedule cannot affect the outcome.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace gkl
