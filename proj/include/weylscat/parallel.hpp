#ifndef WEYLSCAT_PARALLEL_HPP
#define WEYLSCAT_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace weylscat {

// Worker count: WEYL_SCATTER_THREADS caps it, 0/unset means auto.
inline unsigned worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("WEYL_SCATTER_THREADS")) {
    const long v = std::atol(env);
    if (v > 0) return std::min<unsigned>(unsigned(v), 256);
  }
  return hw;
}

// Index-sharded parallel loop; results must be written by index so the
// output is deterministic regardless of scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace weylscat

#endif
