#pragma once

#include <cstdint>
#include <functional>

namespace evf {

// Worker count used by parallel loops: hardware concurrency capped by the
// EVENT_FORECAST_THREADS environment variable (values < 1 mean 1).
int default_thread_count();

// Runs fn(i) for i in [0, n). `max_threads` <= 0 picks the default; 1 runs
// inline. Work is handed out in fixed-size chunks through an atomic cursor,
// so any result written to slot i is identical no matter how many workers
// ran. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn,
                  int max_threads = 0);

}  // namespace evf
