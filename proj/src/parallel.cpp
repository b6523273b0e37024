#include "modcoh/parallel.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace modcoh {

unsigned thread_count() {
  if (const char* env = std::getenv("TOOLKIT_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_chunks(std::size_t n,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& fn,
                     unsigned workers) {
  if (workers == 0) workers = 1;
  if (n < workers) workers = n == 0 ? 1 : static_cast<unsigned>(n);
  const std::size_t step = (n + workers - 1) / workers;
  if (workers == 1) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t b = std::min(n, w * step);
    const std::size_t e = std::min(n, b + step);
    pool.emplace_back([&fn, w, b, e] { fn(w, b, e); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace modcoh
