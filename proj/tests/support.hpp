#pragma once

#include <random>
#include <vector>

#include "chom/chain_complex.hpp"
#include "chom/graphs.hpp"

namespace testing_support {

inline chom::Graph random_graph(std::mt19937& rng, int n, bool loops, int percent = 40) {
  std::uniform_int_distribution<int> coin(0, 99);
  std::vector<chom::Graph::Edge> edges;
  for (int u = 1; u <= n; ++u)
    for (int v = u; v <= n; ++v) {
      if (u == v && !loops) continue;
      if (coin(rng) < percent) edges.emplace_back(u, v);
    }
  return chom::Graph(n, edges);
}

// Cycle on k vertices as an augmented chain complex.
inline chom::ChainComplex polygon(int k, bool augmented = true) {
  chom::ChainComplex c(augmented);
  for (int v = 0; v < k; ++v) {
    chom::SparseColumn col;
    if (augmented) col.push_back({0, 1});
    c.add_cell(0, col);
  }
  for (int e = 0; e < k; ++e) {
    const auto a = static_cast<std::uint32_t>(e), b = static_cast<std::uint32_t>((e + 1) % k);
    c.add_cell(1, {{b, 1}, {a, -1}});
  }
  return c;
}

}  // namespace testing_support
