#ifndef DIGITFACTOR_DETAIL_PARALLEL_HPP
#define DIGITFACTOR_DETAIL_PARALLEL_HPP

#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace digitfactor::detail {

// Worker count: hardware concurrency capped by DIGITFACTOR_THREADS.
inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char *env = std::getenv("DIGITFACTOR_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned long>(cap) < n)
      n = static_cast<unsigned>(cap);
  }
  return n;
}

// Splits [lo, hi) into contiguous chunks, runs fn(chunk_lo, chunk_hi, result&)
// on workers, and returns per-chunk results in index order so callers can
// merge deterministically regardless of scheduling.
template <typename R, typename Fn>
std::vector<R> chunked(std::uint64_t lo, std::uint64_t hi, Fn fn) {
  const std::uint64_t len = hi > lo ? hi - lo : 0;
  unsigned workers = worker_count();
  if (len < 4096 || workers == 1) {
    std::vector<R> out(1);
    fn(lo, hi, out[0]);
    return out;
  }
  const std::uint64_t chunks = workers;
  std::vector<R> out(chunks);
  std::vector<std::thread> pool;
  for (std::uint64_t c = 0; c < chunks; ++c) {
    std::uint64_t a = lo + len * c / chunks;
    std::uint64_t b = lo + len * (c + 1) / chunks;
    pool.emplace_back([&, a, b, c] { fn(a, b, out[c]); });
  }
  for (auto &t : pool) t.join();
  return out;
}

} // namespace digitfactor::detail

#endif
