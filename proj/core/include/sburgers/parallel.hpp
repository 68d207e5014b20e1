#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace sburgers {

/// Worker count for a job batch: hardware concurrency capped by the
/// SBURGERS_THREADS environment variable and by the job count.
int worker_count(std::size_t jobs);

/// Runs fn(i) for i in [0, count) on a transient worker pool. Results must be
/// written to per-index slots; iteration order is unspecified but every index
/// runs exactly once. Exceptions in workers are rethrown (first one wins).
template <typename F>
void parallel_for(std::size_t count, F&& fn, int workers = 0) {
  if (count == 0) return;
  const int w = workers > 0 ? workers : worker_count(count);
  if (w <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(w));
  for (int t = 0; t < w; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failed.load()) std::rethrow_exception(error);
}

}  // namespace sburgers
