#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace kplab {

/// Worker count used when a caller passes 0.
unsigned default_threads();
void set_default_threads(unsigned threads);

/// Runs body(begin, end, worker) over contiguous chunks of [0, count).
/// Chunk boundaries depend only on (count, threads), so per-worker partial
/// results merged in worker order are deterministic.
template <class Body>
void parallel_chunks(std::size_t count, unsigned threads, Body&& body) {
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(
      std::max<std::size_t>(1, std::min<std::size_t>(threads, count)));
  if (threads == 1) {
    body(std::size_t{0}, count, 0u);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  const std::size_t step = (count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t b = std::min(count, w * step);
    const std::size_t e = std::min(count, b + step);
    pool.emplace_back([&, b, e, w] {
      try {
        body(b, e, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Number of workers parallel_chunks will actually use.
inline unsigned effective_threads(std::size_t count, unsigned threads) {
  if (threads == 0) threads = default_threads();
  return static_cast<unsigned>(
      std::max<std::size_t>(1, std::min<std::size_t>(threads, count)));
}

}  // namespace kplab
