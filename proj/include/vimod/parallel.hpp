#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace vimod {

// Worker count used by parallel_for. Results are independent of this value:
// chunks only write disjoint output and reductions are merged in index order.
void set_worker_threads(int n);
int worker_threads();

// Runs fn(i) for i in [begin, end), split into contiguous chunks across the
// configured worker threads. fn must not touch shared mutable state outside
// its own indices.
template <class Fn>
void parallel_for(int begin, int end, Fn fn) {
  const int n = end - begin;
  if (n <= 0) {
    return;
  }
  const int t = std::min(worker_threads(), n);
  if (t <= 1) {
    for (int i = begin; i < end; ++i) {
      fn(i);
    }
    return;
  }
  const int chunk = (n + t - 1) / t;
  std::vector<std::thread> pool;
  pool.reserve(t - 1);
  for (int k = 1; k < t; ++k) {
    const int b = begin + k * chunk;
    const int e = std::min(end, b + chunk);
    if (b >= e) {
      break;
    }
    pool.emplace_back([=]() mutable {
      for (int i = b; i < e; ++i) {
        fn(i);
      }
    });
  }
  const int e0 = std::min(end, begin + chunk);
  for (int i = begin; i < e0; ++i) {
    fn(i);
  }
  for (auto& th : pool) {
    th.join();
  }
}

}  // namespace vimod
