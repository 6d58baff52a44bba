#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace plasmoscan {

/// Run fn(i) for i in [0, n) on `threads` threads, contiguous chunks.
/// Each index writes only its own output slot, so results are identical for
/// any thread count.
template <typename F>
void parallel_for(std::size_t n, int threads, F &&fn) {
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  const std::size_t chunk = (n + nthreads - 1) / nthreads;
  for (std::size_t t = 0; t < nthreads; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (std::thread &th : pool) th.join();
}

}  // namespace plasmoscan
