#pragma once
// Minimal deterministic work sharding: items are processed by index, each
// worker owning a fixed stride class, and results land in caller-provided
// slots, so the outcome never depends on the thread count.

#include <functional>
#include <thread>
#include <vector>

namespace pgon {

inline void parallel_for(long long total, int threads, const std::function<void(long long)>& fn) {
  if (threads <= 1 || total <= 1) {
    for (long long i = 0; i < total; ++i) fn(i);
    return;
  }
  int workers = (int)std::min<long long>(threads, total);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (long long i = w; i < total; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace pgon
