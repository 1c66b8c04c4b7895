#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lullslew {

enum class Execution { sequential, parallel };

/// Calls fn(i) for every i in [0, count). Under Execution::parallel the
/// indices are striped across worker threads; fn must only write state owned
/// by index i, which keeps results identical to the sequential order.
template <typename Fn>
void for_each_index(std::size_t count, Execution exec, Fn&& fn) {
  const std::size_t workers =
      exec == Execution::sequential
          ? 1
          : std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&fn, &failures, w, workers, count] {
        try {
          for (std::size_t i = w; i < count; i += workers) fn(i);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
}

}  // namespace lullslew
