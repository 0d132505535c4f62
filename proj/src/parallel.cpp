#include "hlawka/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

namespace hlawka {

namespace {

unsigned default_cap() {
  if (const char* env = std::getenv("HLAWKA_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to hardware default
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1u : hw;
}

std::atomic<unsigned>& cap_storage() {
  static std::atomic<unsigned> cap{default_cap()};
  return cap;
}

}  // namespace

unsigned thread_cap() { return cap_storage().load(); }

void set_thread_cap(unsigned n) { cap_storage().store(n == 0 ? 1u : n); }

void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& task) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_cap(), n_chunks));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n_chunks; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n_chunks; i = next.fetch_add(1)) task(i);
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
}

std::int64_t disc_point_count(double radius) {
  const std::int64_t r = static_cast<std::int64_t>(std::floor(radius));
  const double r2 = radius * radius;
  std::int64_t count = 0;
  for (std::int64_t m = -r; m <= r; ++m) {
    const double rem = r2 - static_cast<double>(m) * static_cast<double>(m);
    if (rem < 0.0) continue;
    std::int64_t nmax = static_cast<std::int64_t>(std::floor(std::sqrt(rem)));
    while (static_cast<double>(nmax + 1) * static_cast<double>(nmax + 1) <= rem) ++nmax;
    while (nmax > 0 && static_cast<double>(nmax) * static_cast<double>(nmax) > rem) --nmax;
    count += 2 * nmax + 1;
  }
  return count - 1;
}

}  // namespace hlawka
