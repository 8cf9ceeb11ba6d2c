#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace phc {

/// Resolves a thread request; zero means one per hardware thread.
inline unsigned resolve_threads(unsigned requested) {
  if (requested) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs body(i) for every task index in [0, tasks) on up to `threads` workers.
/// Callers write results into per-task slots and reduce them in index order,
/// so totals never depend on scheduling.
template <class Body>
void run_tasks(std::size_t tasks, unsigned threads, Body&& body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), tasks));
  if (threads <= 1) {
    for (std::size_t i = 0; i < tasks; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < tasks;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace phc
