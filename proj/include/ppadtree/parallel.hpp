#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ppad {

inline int default_threads() {
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(std::min(h, 64u));
}

// Runs body(state, i) for i in [0, n). Worker t handles i = t, t + T, ...
// and owns one state built by make(); callers write results by index, so
// output order never depends on scheduling.
template <class MakeState, class Body>
void parallel_for(std::size_t n, int threads, MakeState make, Body body) {
  if (threads <= 0) threads = default_threads();
  std::size_t T = std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(n, 1));
  if (T <= 1) {
    auto st = make();
    for (std::size_t i = 0; i < n; ++i) body(st, i);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < T; ++t) {
    pool.emplace_back([&, t] {
      try {
        auto st = make();
        for (std::size_t i = t; i < n; i += T) body(st, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ppad
