#include "kplab/parallel.hpp"

#include <atomic>

namespace kplab {

namespace {
std::atomic<unsigned> g_threads{0};
}

unsigned default_threads() {
  unsigned t = g_threads.load();
  if (t != 0) return t;
  t = std::thread::hardware_concurrency();
  return t == 0 ? 1 : t;
}

void set_default_threads(unsigned threads) { g_threads.store(threads); }

}  // namespace kplab
