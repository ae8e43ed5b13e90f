#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace plenoptic {

// Worker count used when a caller passes 0.
inline int default_worker_count() {
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs body(i) for i in [begin, end) on up to `workers` threads. Each index
// is processed exactly once and results must not depend on which thread ran
// it, so outputs are identical for any worker count. The first exception
// thrown by a body is rethrown on the calling thread.
template <typename Body>
void parallel_for(int begin, int end, int workers, Body&& body) {
  if (end <= begin) return;
  if (workers <= 0) workers = default_worker_count();
  workers = std::min(workers, end - begin);
  if (workers == 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::atomic<int> next{begin};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < end; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace plenoptic
