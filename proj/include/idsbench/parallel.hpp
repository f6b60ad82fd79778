#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace idsbench {

/// Global worker cap for data-parallel loops (CLI --threads). 0 = hardware.
inline std::size_t& thread_limit() {
  static std::size_t limit = 0;
  return limit;
}

inline std::size_t effective_threads() {
  std::size_t n = thread_limit();
  if (n == 0) n = std::thread::hardware_concurrency();
  return std::max<std::size_t>(1, n);
}

/// Run fn(i) for i in [0, n). Iterations must be independent; results are
/// identical to the sequential order regardless of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(effective_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace idsbench
