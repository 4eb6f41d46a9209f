#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "seba/numeric.hpp"

namespace seba {

/// Worker count: `SEBA_THREADS` if set to a positive integer, otherwise the
/// hardware concurrency.
inline unsigned thread_count() {
  if (const char* env = std::getenv("SEBA_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `fn(i)` for every i in [0, n). Indices are claimed dynamically, so
/// `fn` must write only to slot i of its outputs. The first exception thrown
/// by any worker is rethrown after all workers join.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned threads = thread_count()) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

/// Deterministic parallel sum of `term(i)` for i in [0, n). The index range is
/// cut into fixed-size chunks independent of the thread count; each chunk is
/// summed with compensation and the chunk totals are reduced pairwise.
template <typename Term>
double deterministic_sum(std::size_t n, Term&& term, std::size_t chunk = 1 << 14,
                         unsigned threads = thread_count()) {
  const std::size_t chunks = (n + chunk - 1) / chunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_for(
      chunks,
      [&](std::size_t c) {
        CompensatedSum<double> acc;
        const std::size_t end = std::min(n, (c + 1) * chunk);
        for (std::size_t i = c * chunk; i < end; ++i) acc += term(i);
        partial[c] = acc.value();
      },
      threads);
  return pairwise_sum(partial);
}

}  // namespace seba
