// SPDX-License-Identifier: Apache-2.0

#ifndef BITMETER_PARALLEL_HPP
#define BITMETER_PARALLEL_HPP

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace bitmeter {

/// Worker count for data-parallel loops. BITMETER_THREADS caps it;
/// otherwise the hardware concurrency is used.
inline int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  int n = hw == 0 ? 1 : static_cast<int>(hw);
  if (const char* env = std::getenv("BITMETER_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1 && cap < n) n = static_cast<int>(cap);
  }
  return n;
}

/// Runs body(begin, end) over disjoint index chunks of [0, n).
/// Each chunk writes to its own slots, so results are deterministic
/// regardless of the thread count.
inline void parallel_for(std::int64_t n,
                         const std::function<void(std::int64_t, std::int64_t)>& body) {
  if (n <= 0) return;
  const std::int64_t grain = 1 << 12;
  int workers = worker_count();
  if (workers <= 1 || n <= grain) {
    body(0, n);
    return;
  }
  if (static_cast<std::int64_t>(workers) > (n + grain - 1) / grain) {
    workers = static_cast<int>((n + grain - 1) / grain);
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  const std::int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    std::int64_t begin = w * chunk;
    std::int64_t end = begin + chunk < n ? begin + chunk : n;
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace bitmeter

#endif  // BITMETER_PARALLEL_HPP
