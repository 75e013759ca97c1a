#include "coarsegeo/scan.hpp"

#include <random>

namespace coarsegeo {

TripleList make_triple_list(std::size_t n, const ScanBudget& budget) {
  TripleList out;
  out.seed = budget.seed;
  if (n < 3) return out;
  double total = static_cast<double>(n) * (n - 1) * (n - 2) / 6.0;
  if (total <= static_cast<double>(budget.max_triples)) {
    out.triples.reserve(static_cast<std::size_t>(total));
    for (std::uint32_t i = 0; i + 2 < n; ++i) {
      for (std::uint32_t j = i + 1; j + 1 < n; ++j) {
        for (std::uint32_t k = j + 1; k < n; ++k) {
          out.triples.push_back({i, j, k});
        }
      }
    }
    return out;
  }
  out.subsampled = true;
  out.triples.reserve(budget.max_triples);
  std::mt19937_64 rng(budget.seed);
  std::uniform_int_distribution<std::uint32_t> pick(
      0, static_cast<std::uint32_t>(n - 1));
  while (out.triples.size() < budget.max_triples) {
    std::uint32_t a = pick(rng), b = pick(rng), c = pick(rng);
    if (a == b || b == c || a == c) continue;
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    out.triples.push_back({a, b, c});
  }
  return out;
}

}  // namespace coarsegeo
