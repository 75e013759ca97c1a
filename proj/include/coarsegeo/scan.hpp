#pragma once

#include <array>
#include <cstdint>
#include <thread>
#include <vector>

namespace coarsegeo {

// Cap on the number of ordered-triple evaluations; beyond it the scan
// falls back to a seeded subsample so O(n^3) stays desk-scale.
struct ScanBudget {
  std::size_t max_triples = 2'000'000;
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = hardware concurrency
};

// The exact index triples (i < j < k) a scan will visit: all of them when
// C(n,3) fits the budget, otherwise `budget` seeded draws. Generated
// single-threaded so the visited set is independent of the worker count.
struct TripleList {
  std::vector<std::array<std::uint32_t, 3>> triples;
  bool subsampled = false;
  std::uint64_t seed = 0;
};

TripleList make_triple_list(std::size_t n, const ScanBudget& budget);

inline int resolve_workers(int workers) {
  if (workers > 0) return workers;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(begin, end, worker_index) over a partition of [0, total).
template <typename Body>
void parallel_chunks(std::size_t total, int workers, Body&& body) {
  int w = resolve_workers(workers);
  if (total == 0) return;
  if (w <= 1 || total < 1024) {
    body(std::size_t{0}, total, 0);
    return;
  }
  std::size_t nchunks = static_cast<std::size_t>(w);
  std::vector<std::thread> threads;
  threads.reserve(nchunks);
  std::size_t per = (total + nchunks - 1) / nchunks;
  for (std::size_t c = 0; c < nchunks; ++c) {
    std::size_t b = c * per, e = std::min(total, b + per);
    if (b >= e) break;
    threads.emplace_back([&body, b, e, c] { body(b, e, static_cast<int>(c)); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace coarsegeo
