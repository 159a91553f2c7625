#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace psmanip {

/// Runs fn(i) for every i in [0, count) on up to `jobs` threads. Work items
/// must be independent and write only to their own output slot; then the
/// result is identical for any worker count. If several calls throw, the
/// exception of the smallest index is rethrown.
template <typename Fn>
void parallel_for_index(std::uint64_t count, int jobs, Fn&& fn) {
  if (count == 0) {
    return;
  }
  const std::uint64_t workers =
      std::min<std::uint64_t>(count, static_cast<std::uint64_t>(jobs < 1 ? 1 : jobs));
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < count; ++i) {
      fn(i);
    }
    return;
  }

  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::uint64_t error_index = count;
  std::exception_ptr error;

  auto worker = [&] {
    for (std::uint64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (std::uint64_t w = 0; w < workers; ++w) {
    threads.emplace_back(worker);
  }
  for (std::thread& thread : threads) {
    thread.join();
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

}  // namespace psmanip
