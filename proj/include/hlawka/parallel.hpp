#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hlawka/types.hpp"

namespace hlawka {

// Upper bound on worker threads. Defaults to HLAWKA_THREADS, else hardware concurrency.
unsigned thread_cap();
void set_thread_cap(unsigned n);

// Runs task(i) for i in [0, n_chunks). Chunk i always does the same work regardless
// of the thread count; callers reduce per-chunk results in index order.
void parallel_chunks(std::size_t n_chunks, const std::function<void(std::size_t)>& task);

// Cascade summation: O(log n) error growth and a fixed association order.
template <typename T>
T pairwise_sum(std::span<const T> xs) {
  constexpr std::size_t kBlock = 32;
  if (xs.size() <= kBlock) {
    T acc{};
    for (const T& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

template <typename T>
T pairwise_sum(const std::vector<T>& xs) {
  return pairwise_sum(std::span<const T>(xs));
}

// Deterministic sum of term(m, n) over all nonzero lattice points with m^2 + n^2 <= radius^2.
// Rows are grouped into fixed chunks of kRowsPerChunk; each row, chunk and the chunk list is
// summed pairwise, so the result is bit-identical for any thread cap.
template <typename T, typename Term>
T disc_sum(double radius, Term&& term) {
  constexpr std::int64_t kRowsPerChunk = 64;
  const std::int64_t r = static_cast<std::int64_t>(std::floor(radius));
  const double r2 = radius * radius;
  const std::int64_t rows = 2 * r + 1;
  const std::size_t n_chunks = static_cast<std::size_t>((rows + kRowsPerChunk - 1) / kRowsPerChunk);
  std::vector<T> chunk_sums(n_chunks);
  parallel_chunks(n_chunks, [&](std::size_t c) {
    const std::int64_t m_begin = -r + static_cast<std::int64_t>(c) * kRowsPerChunk;
    const std::int64_t m_end = std::min<std::int64_t>(m_begin + kRowsPerChunk, r + 1);
    std::vector<T> row_sums;
    row_sums.reserve(static_cast<std::size_t>(m_end - m_begin));
    std::vector<T> buf;
    for (std::int64_t m = m_begin; m < m_end; ++m) {
      const double rem = r2 - static_cast<double>(m) * static_cast<double>(m);
      if (rem < 0.0) continue;
      std::int64_t nmax = static_cast<std::int64_t>(std::floor(std::sqrt(rem)));
      while (static_cast<double>(nmax + 1) * static_cast<double>(nmax + 1) <= rem) ++nmax;
      while (nmax > 0 && static_cast<double>(nmax) * static_cast<double>(nmax) > rem) --nmax;
      buf.clear();
      buf.reserve(static_cast<std::size_t>(2 * nmax + 1));
      for (std::int64_t n = -nmax; n <= nmax; ++n) {
        if (m == 0 && n == 0) continue;
        buf.push_back(term(m, n));
      }
      row_sums.push_back(pairwise_sum(buf));
    }
    chunk_sums[c] = pairwise_sum(row_sums);
  });
  return pairwise_sum(chunk_sums);
}

// Number of nonzero lattice points in the closed disc of the given radius.
std::int64_t disc_point_count(double radius);

}  // namespace hlawka
