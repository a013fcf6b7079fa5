#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace semnoma {

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Work items are
/// claimed from a shared counter, so results must be written to slot i for
/// the output to be independent of scheduling. The first exception (by item
/// index) is rethrown after all workers join.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1u), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace semnoma
