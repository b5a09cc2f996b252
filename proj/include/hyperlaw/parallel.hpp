#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace hyperlaw {

// HYPERLAW_THREADS if set and positive, else the hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("HYPERLAW_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls f(i) for i in [0, n). Work is split into fixed contiguous blocks, so
// results written by index do not depend on the thread count. The exception
// from the lowest failing index is rethrown.
template <class F>
void parallel_for(size_t n, F&& f, int threads = 0) {
  if (threads <= 0) threads = thread_count();
  threads = static_cast<int>(std::min<size_t>(threads, n));
  if (threads <= 1) {
    for (size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  const size_t block = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const size_t lo = t * block, hi = std::min(n, lo + block);
    pool.emplace_back([&, lo, hi] {
      for (size_t i = lo; i < hi; ++i) {
        try {
          f(i);
        } catch (...) {
          errors[i] = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace hyperlaw
