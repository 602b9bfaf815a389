#pragma once

#include <functional>

namespace magspec {

// MAGSPEC_THREADS overrides; otherwise hardware concurrency (min 1).
int thread_count();

// Runs fn(i) for i in [0, n) on contiguous chunks. Each index owns its
// output slot, so results are deterministic regardless of the thread count.
void parallel_for(long n, const std::function<void(long)>& fn);

}  // namespace magspec
