#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace latcensus {

// 0 means "machine parallelism".
inline unsigned resolve_threads(unsigned threads) {
  if (threads != 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [lo, hi] into contiguous chunks, evaluates range_sum(a, b) on
/// each (b inclusive) and adds the partial results in chunk order.
/// With an exact, associative `T` the result does not depend on `threads`.
template <class T, class F>
T partitioned_sum(std::uint64_t lo, std::uint64_t hi, unsigned threads, F range_sum) {
  if (hi < lo) return T{};
  const std::uint64_t len = hi - lo + 1;
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), len));
  if (workers <= 1) return range_sum(lo, hi);

  std::vector<T> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t a = lo + len * w / workers;
    const std::uint64_t b = lo + len * (w + 1) / workers - 1;
    pool.emplace_back([&, w, a, b] {
      try {
        parts[w] = range_sum(a, b);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  T total = std::move(parts[0]);
  for (unsigned w = 1; w < workers; ++w) total += parts[w];
  return total;
}

}  // namespace latcensus
