#include <doctest.h>

#include <bit>
#include <map>
#include <random>

#include "chom/errors.hpp"
#include "chom/formulas.hpp"
#include "chom/homology.hpp"
#include "chom/homspaces.hpp"
#include "support.hpp"

using namespace chom;
using testing_support::random_graph;

namespace {

// Cells per dimension by direct enumeration of all maps V(T) -> subsets of V(G).
std::vector<std::size_t> brute_hom_counts(const Graph& t, const Graph& g, bool plus) {
  const int nt = t.vertex_count(), ng = g.vertex_count();
  std::vector<std::size_t> counts;
  std::vector<std::uint32_t> eta(nt + 1, 0);
  auto ok_pair = [&](std::uint32_t a, std::uint32_t b) {
    for (int y = 1; y <= ng; ++y)
      for (int z = 1; z <= ng; ++z)
        if ((a >> (y - 1) & 1) && (b >> (z - 1) & 1) && !g.adjacent(y, z)) return false;
    return true;
  };
  const std::uint32_t lo = plus ? 0 : 1, hi = 1u << ng;
  auto rec = [&](auto&& self, int x) -> void {
    if (x > nt) {
      int size = 0, total = 0;
      for (int v = 1; v <= nt; ++v) {
        size += std::popcount(eta[v]);
        total += std::popcount(eta[v]) - 1;
      }
      if (plus && size == 0) return;
      for (const auto& [a, b] : t.edges())
        if (!ok_pair(eta[a], eta[b])) return;
      const int dim = plus ? size - 1 : total;
      if (static_cast<int>(counts.size()) <= dim) counts.resize(dim + 1, 0);
      ++counts[dim];
      return;
    }
    for (std::uint32_t s = lo; s < hi; ++s) {
      eta[x] = s;
      self(self, x + 1);
    }
  };
  rec(rec, 1);
  return counts;
}

std::vector<std::size_t> counts_of(const ChainComplex& c) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= c.max_degree(); ++d) out.push_back(c.size(d));
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

TEST_CASE("independence complexes") {
  auto c4 = independence_complex(cycle_graph(4));
  CHECK(c4.faces.size() == 3);
  CHECK(c4.faces[2] == std::vector<std::uint64_t>{0b0101, 0b1010});
  CHECK(describe(homology_integer(c4.chains())) == "Z(0)");
  CHECK(describe(homology_integer(independence_complex(cycle_graph(6)).chains())) == "Z^2(1)");
  auto k5 = independence_complex(complete_graph(5));
  CHECK(k5.face_count() == 5);
  CHECK(k5.dimension() == 0);
  const Graph looped(2, std::vector<Graph::Edge>{{1, 1}});
  CHECK(independence_complex(looped).face_count() == 1);
}

TEST_CASE("independence complexes of cycles follow the closed form") {
  for (int m = 3; m <= 12; ++m)
    CHECK(describe(graded_from(homology_integer(independence_complex(cycle_graph(m)).chains()))) == describe(ind_cycle_formula(m)));
}

TEST_CASE("joins") {
  SimplicialComplex s0 = independence_complex(complete_graph(2));
  auto circle = join_complex(s0, s0);
  CHECK(circle.face_count() == 8);
  CHECK(describe(homology_integer(circle.chains())) == "Z(1)");
  auto c4 = independence_complex(cycle_graph(4));
  CHECK(describe(homology_integer(join_complex(join_complex(c4, c4), c4).chains())) == "Z(2)");
  std::mt19937 rng(808);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = independence_complex(random_graph(rng, 1 + trial % 5, false));
    auto y = independence_complex(random_graph(rng, 1 + trial % 4, false));
    CHECK(join_complex(x, y).reduced_euler() == -x.reduced_euler() * y.reduced_euler());
  }
}

TEST_CASE("Hom complexes against enumeration") {
  auto h = hom_complex(complete_graph(2), complete_graph(3));
  CHECK(counts_of(drop_augmentation(h.cells.chain)) == std::vector<std::size_t>{6, 6});
  CHECK(describe(homology_integer(h.cells.chain)) == "Z(1)");
  std::mt19937 rng(909);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph t = random_graph(rng, 1 + trial % 4, false, 50);
    const Graph g = random_graph(rng, 1 + (trial / 4) % 4, true, 50);
    CHECK(counts_of(drop_augmentation(hom_complex(t, g).cells.chain)) == brute_hom_counts(t, g, false));
    CHECK(counts_of(drop_augmentation(hom_plus(t, g).cells.chain)) == brute_hom_counts(t, g, true));
  }
}

TEST_CASE("Hom(C_m, K_n) cohomology") {
  auto cohom = [](int m, int n) {
    return describe(graded_from(to_cohomology(homology_integer(hom_complex(cycle_graph(m), complete_graph(n)).cells.chain))));
  };
  CHECK(cohom(6, 4) == "Z(1) + Z^14(2)");
  CHECK(cohom(5, 4) == "Z2(2) + Z(3)");
  CHECK(cohom(5, 4) == describe(hom_cycle_cohomology(5, 4)));
}

TEST_CASE("Hom+ of cycles") {
  auto plus = [](int m, int n) { return describe(homology_integer(hom_plus(cycle_graph(m), complete_graph(n)).cells.chain)); };
  CHECK(plus(4, 3) == "Z(2)");
  CHECK(plus(6, 4) == "Z^16(7)");
}

TEST_CASE("Hom+ is the independence complex of the product with the complement") {
  std::mt19937 rng(1001);
  for (int trial = 0; trial < 30; ++trial) {
    const Graph t = random_graph(rng, 1 + trial % 4, false, 50);
    const Graph g = random_graph(rng, 1 + (trial / 3) % 4, true, 50);
    auto hp = hom_plus(t, g);
    auto ind = independence_complex(categorical_product(t, strong_complement(g)));
    // identical faces under the canonical vertex numbering
    std::vector<std::uint64_t> a, b;
    for (int d = 0; d < static_cast<int>(hp.masks->size()); ++d)
      for (auto mask : (*hp.masks)[d]) a.push_back(mask);
    for (std::size_t s = 1; s < ind.faces.size(); ++s)
      for (auto f : ind.faces[s]) b.push_back(f);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
    CHECK(homology_integer(hp.cells.chain).same_groups(homology_integer(ind.chains())));
  }
}

TEST_CASE("Hom+ to complete graphs is a join power of the independence complex") {
  for (int m = 4; m <= 7; ++m)
    for (int n = 3; n <= 4; ++n) {
      if (m == 7 && n == 4) continue;  // 2^28 subsets of the product; skipped for time
      auto base = independence_complex(cycle_graph(m));
      auto power = base;
      for (int i = 1; i < n; ++i) power = join_complex(power, base);
      auto lhs = homology_integer(hom_plus(cycle_graph(m), complete_graph(n)).cells.chain);
      CHECK(lhs.same_groups(homology_integer(power.chains())));
      CHECK(describe(graded_from(lhs)) == describe(homplus_cycle_formula(m, n)));
    }
}

TEST_CASE("vanishing range of Hom+(C_m, K_n)") {
  for (auto [m, n] : {std::pair{5, 4}, std::pair{6, 4}, std::pair{7, 4}}) {
    const auto h = homology_integer(hom_plus(cycle_graph(m), complete_graph(n)).cells.chain);
    for (int i = 0; i <= m + n - 4; ++i) {
      const bool zero = h.betti(i) == 0 && h.torsion(i).empty() && h.torsion(i - 1).empty();
      if (vanishing_check(m, n, i) == Vanishing::promised_zero) CHECK_MESSAGE(zero, "m=", m, " n=", n, " i=", i);
      else CHECK_FALSE(zero);
    }
  }
}

TEST_CASE("every generated Hom complex squares to zero") {
  std::mt19937 rng(1102);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph t = random_graph(rng, 2 + trial % 3, false, 60);
    const Graph g = random_graph(rng, 2 + (trial / 3) % 3, true, 60);
    CHECK_NOTHROW(hom_complex(t, g).cells.chain.check_square_zero());
    CHECK_NOTHROW(hom_plus(t, g).cells.chain.check_square_zero());
  }
}

TEST_CASE("support filtration census") {
  const Graph t = cycle_graph(5), g = complete_graph(4);
  auto hp = hom_plus(t, g);
  auto census = support_census(hp);
  // level p, total degree p+q: q-cells of Hom(T[S], G) summed over |S| = p+1
  std::map<std::pair<int, int>, std::size_t> want;
  for (std::uint32_t s = 1; s < 32; ++s) {
    std::vector<int> verts;
    for (int v = 1; v <= 5; ++v)
      if (s >> (v - 1) & 1) verts.push_back(v);
    const int p = static_cast<int>(verts.size()) - 1;
    auto counts = brute_hom_counts(induced_subgraph(t, verts).graph, g, false);
    for (std::size_t q = 0; q < counts.size(); ++q) want[{p, p + static_cast<int>(q)}] += counts[q];
  }
  CHECK(census == want);
  auto f = filtration_by_support(hp);
  CHECK_NOTHROW(f.check_filtration());
  bool below = true;
  for (int d = 0; d <= f.complex.max_degree(); ++d)
    for (std::uint32_t j = 0; j < f.complex.size(d); ++j) below = below && f.level_of(d, j) < 5;
  CHECK(below);
}

TEST_CASE("rho isomorphism") {
  CHECK(rho_check(complete_graph(2), complete_graph(3)).ok);
  CHECK(rho_check(cycle_graph(5), complete_graph(3)).ok);
  CHECK(rho_check(cycle_graph(4), complete_graph(4)).ok);
  for (int nt = 1; nt <= 7; ++nt) CHECK(rho_exponent(std::vector<std::uint32_t>(nt, 1u)) % 2 == (nt / 2) % 2);
}

TEST_CASE("cell census of Hom(C_m, K_n) by transfer matrix") {
  for (int m = 3; m <= 6; ++m)
    for (int n = 3; n <= 4; ++n) {
      auto census = hom_cycle_cell_census(m, n);
      auto brute = brute_hom_counts(cycle_graph(m), complete_graph(n), false);
      REQUIRE(census.size() >= brute.size());
      for (std::size_t d = 0; d < census.size(); ++d) CHECK(census[d] == BigInt(d < brute.size() ? brute[d] : 0));
    }
}

TEST_CASE("size limit") {
  CHECK_THROWS_AS(hom_complex(cycle_graph(6), complete_graph(5), BuildLimits{1000}), SizeLimitExceeded);
  CHECK_THROWS_AS(independence_complex(path_graph(20), BuildLimits{100}), SizeLimitExceeded);
}
