#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace csd {

// Worker count from CSD_WORKERS, else the hardware concurrency (at least 1).
int default_workers();

// Runs body(i) for i in [0, count) on up to `workers` threads. Each index runs
// exactly once; the first exception is rethrown after all threads join.
template <typename Body>
void parallel_for(size_t count, int workers, Body&& body) {
  const size_t threads = std::min<size_t>(count, static_cast<size_t>(workers < 1 ? 1 : workers));
  if (threads <= 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (size_t t = 0; t < threads; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace csd
