#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace eegdem {

/// Runs fn(i) for i in [0, n). Work items must be independent and write only
/// to their own slots; results are then identical for any thread count.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t hw = std::thread::hardware_concurrency();
  const std::size_t n_threads = std::min(n, hw == 0 ? std::size_t{1} : hw);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    workers.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < n; i += n_threads) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace eegdem
