#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace gml {

/// Worker count: GML_THREADS if set and positive, else hardware concurrency.
inline unsigned thread_budget() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GML_THREADS")) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return hw;
}

/// Runs body(i) for i in [0, n). Each index must write only its own output
/// slot; results are then independent of scheduling.
template <class Body>
void parallel_for(long n, Body&& body) {
  unsigned workers = std::min<long>(thread_budget(), std::max(1L, n));
  if (workers <= 1 || n < 2) {
    for (long i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (long i = w; i < n; i += workers) body(i);
    });
  }
}

}  // namespace gml
