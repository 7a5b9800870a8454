#include "evf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace evf {

int default_thread_count() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* cap = std::getenv("EVENT_FORECAST_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(cap, &end, 10);
    if (end != cap && v >= 1) n = std::min<long>(n, v);
    if (end != cap && v < 1) n = 1;
  }
  return n;
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn,
                  int max_threads) {
  if (n <= 0) return;
  int workers = max_threads > 0 ? max_threads : default_thread_count();
  workers = static_cast<int>(std::min<std::int64_t>(workers, n));

  if (workers == 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }

  constexpr std::int64_t kChunk = 16;
  std::atomic<std::int64_t> cursor{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto body = [&] {
    for (;;) {
      const std::int64_t begin = cursor.fetch_add(kChunk);
      if (begin >= n) return;
      const std::int64_t end = std::min(begin + kChunk, n);
      try {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(body);
  body();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace evf
