#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace polyskel::detail {

inline unsigned worker_count(std::size_t work_items) {
  const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(1, work_items)));
}

/// Runs body(worker, begin, end) over contiguous slices of [0, count).
/// Callers merge per-worker results in worker order, so outputs never depend
/// on scheduling.
template <typename Body>
void parallel_slices(std::size_t count, unsigned workers, Body&& body) {
  if (workers <= 1 || count < 2) {
    body(0U, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = count * w / workers;
    const std::size_t hi = count * (w + 1) / workers;
    pool.emplace_back([&body, &errors, w, lo, hi] {
      try {
        body(w, lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace polyskel::detail
