#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace lacewalk {

/// Caps worker threads process-wide (the CLI --threads flag lands here).
void set_max_threads(int n);
int max_threads();

/// Splits [0, n_items) into fixed-size chunks, fills one Partial per chunk
/// (possibly on several threads) and folds the partials in chunk order, so
/// the result does not depend on the worker count.
template <class Partial, class ChunkFn, class MergeFn>
Partial parallel_chunks(std::int64_t n_items, std::int64_t chunk_size, Partial init,
                        ChunkFn&& fill, MergeFn&& merge) {
  if (n_items <= 0) return init;
  const std::int64_t n_chunks = (n_items + chunk_size - 1) / chunk_size;
  std::vector<Partial> parts(static_cast<std::size_t>(n_chunks), init);
  std::atomic<std::int64_t> next{0};
  auto worker = [&]() {
    for (std::int64_t c; (c = next.fetch_add(1)) < n_chunks;) {
      const std::int64_t lo = c * chunk_size;
      const std::int64_t hi = std::min(n_items, lo + chunk_size);
      fill(lo, hi, parts[static_cast<std::size_t>(c)]);
    }
  };
  const int workers = static_cast<int>(std::min<std::int64_t>(max_threads(), n_chunks));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  Partial total = init;
  for (auto& p : parts) merge(total, p);
  return total;
}

}  // namespace lacewalk
