#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace sharpconvex {

// Worker count used by grid evaluations; 1 means run inline.
inline std::atomic<int>& default_jobs() {
  static std::atomic<int> jobs{1};
  return jobs;
}

namespace detail {
inline thread_local bool in_parallel_worker = false;
}

// Evaluates fn(i) for i in [0, n) on up to `jobs` threads and returns the
// results in index order. The first exception by index is rethrown. Calls
// made from inside a worker run inline.
template <class Fn>
auto parallel_map(std::size_t n, Fn&& fn, int jobs = default_jobs().load()) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out(n);
  if (jobs <= 1 || n <= 1 || detail::in_parallel_worker) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    detail::in_parallel_worker = true;
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
  std::vector<std::thread> threads;
  threads.reserve(count);
  for (std::size_t t = 0; t < count; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace sharpconvex
