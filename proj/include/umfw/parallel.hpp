#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace umfw {

// Index-parallel map with deterministic result placement: results land by
// index, so the output is independent of scheduling and worker count.
template <class Fn>
void parallel_for(int n, int workers, Fn&& fn) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  int count = std::min(workers, n);
  for (int w = 0; w < count; ++w)
    pool.emplace_back([&] {
      for (;;) {
        int i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  for (auto& t : pool) t.join();
}

}  // namespace umfw
