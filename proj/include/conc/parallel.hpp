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

namespace conc {

/// Worker count from CONC_THREADS; unset, 0 or unparsable mean hardware concurrency.
inline unsigned threads_from_env() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* raw = std::getenv("CONC_THREADS");
  if (raw == nullptr) return hw;
  try {
    const long v = std::stol(raw);
    if (v <= 0) return hw;
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    return hw;
  }
}

/**
 * Calls body(i) for i in [0, n) on up to `threads` workers.
 *
 * Work is handed out by an atomic counter; callers write results into
 * per-index slots, so output does not depend on scheduling. The first
 * exception thrown by any body is rethrown on the calling thread.
 */
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(n);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace conc
