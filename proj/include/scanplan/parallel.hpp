#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace scanplan {

inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `task(i)` for i in [0, count) on up to `threads` workers and returns the
/// integer sum of the results. Summation of integers keeps the total
/// independent of scheduling.
inline std::uint64_t parallel_count(std::size_t count, unsigned threads,
                                    const std::function<std::uint64_t(std::size_t)>& task) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), count));
  if (workers <= 1) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < count; ++i) total += task(i);
    return total;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> total{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        std::uint64_t local = 0;
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) local += task(i);
        total.fetch_add(local);
      });
    }
  }
  return total.load();
}

}  // namespace scanplan
