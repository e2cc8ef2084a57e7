#pragma once

#include <cstdlib>
#include <future>
#include <string>
#include <vector>

namespace renyi {

// Parallelism cap from RENYI_THREADS; defaults to serial execution.
inline std::size_t thread_budget() {
  const char* env = std::getenv("RENYI_THREADS");
  if (!env) return 1;
  long v = std::strtol(env, nullptr, 10);
  return v > 1 ? static_cast<std::size_t>(v) : 1;
}

// Applies `fn(i)` for i in [0, n) and collects results in index order. The
// callable must be a pure function of its index so that the result does not
// depend on scheduling.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn) -> std::vector<decltype(fn(std::size_t{0}))> {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> results;
  results.reserve(n);
  const std::size_t budget = thread_budget();
  if (budget <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) results.push_back(fn(i));
    return results;
  }
  std::vector<std::future<R>> futures;
  futures.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    futures.push_back(std::async(std::launch::deferred | std::launch::async,
                                 [&fn, i] { return fn(i); }));
    if (futures.size() >= budget) {
      // Drain in order; completion order does not matter for the output.
      results.push_back(futures.front().get());
      futures.erase(futures.begin());
    }
  }
  for (auto& f : futures) results.push_back(f.get());
  return results;
}

}  // namespace renyi
