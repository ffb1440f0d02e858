#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace divdiv {

// Worker cap: DIVDIV_THREADS if set, otherwise hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv("DIVDIV_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end) over fixed-size chunks of [0, n). The chunk grid is
// independent of the thread count, so per-chunk results can be merged in
// chunk order for reproducible output.
inline void parallel_chunks(int n, int chunk,
                            const std::function<void(int, int)>& fn) {
  if (n <= 0) return;
  int nchunks = (n + chunk - 1) / chunk;
  int nthreads = std::min(worker_count(), nchunks);
  if (nthreads <= 1) {
    for (int c = 0; c < nchunks; ++c)
      fn(c * chunk, std::min(n, (c + 1) * chunk));
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([=, &fn] {
      for (int c = t; c < nchunks; c += nthreads)
        fn(c * chunk, std::min(n, (c + 1) * chunk));
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace divdiv
