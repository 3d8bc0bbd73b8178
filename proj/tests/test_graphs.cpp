#include <doctest.h>

#include <random>
#include <set>

#include "chom/errors.hpp"
#include "chom/graphs.hpp"
#include "support.hpp"

using namespace chom;
using testing_support::random_graph;

namespace {

std::set<std::pair<int, int>> edge_set(const Graph& g) { return {g.edges().begin(), g.edges().end()}; }

}  // namespace

TEST_CASE("standard graphs") {
  const Graph c3 = cycle_graph(3);
  CHECK(c3.vertex_count() == 3);
  CHECK(edge_set(c3) == std::set<std::pair<int, int>>{{1, 2}, {2, 3}, {1, 3}});
  CHECK(c3 == complete_graph(3));
  const Graph k4 = complete_graph(4);
  CHECK(k4.edge_count() == 6);
  for (int v = 1; v <= 4; ++v) CHECK_FALSE(k4.has_loop(v));
  CHECK(path_graph(5).edge_count() == 4);
  CHECK(cycle_graph(7).edge_count() == 7);
  CHECK_THROWS_AS(cycle_graph(2), InvalidParameter);
  CHECK_THROWS_AS(complete_graph(0), InvalidParameter);
  CHECK_THROWS_AS(path_graph(0), InvalidParameter);
}

TEST_CASE("strong complement") {
  const Graph k2c = strong_complement(complete_graph(2));
  CHECK(edge_set(k2c) == std::set<std::pair<int, int>>{{1, 1}, {2, 2}});
  const Graph c3c = strong_complement(cycle_graph(3));
  CHECK(edge_set(c3c) == std::set<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 3}});
}

TEST_CASE("strong complement is an involution on random graphs") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(rng, 1 + trial % 8, true);
    const Graph c = strong_complement(g);
    CHECK(strong_complement(c) == g);
    const int n = g.vertex_count();
    CHECK(g.edge_count() + c.edge_count() == static_cast<std::size_t>(n * (n + 1) / 2));
  }
}

TEST_CASE("categorical product") {
  CHECK(categorical_product(cycle_graph(5), strong_complement(complete_graph(4))).vertex_count() == 20);
  const Graph kk = categorical_product(complete_graph(2), complete_graph(2));
  CHECK(kk.vertex_count() == 4);
  CHECK(kk.edge_count() == 2);
  for (const auto& [u, v] : kk.edges()) CHECK(u != v);
  const Graph point(1, std::vector<Graph::Edge>{{1, 1}});
  std::mt19937 rng(7);
  const Graph g = random_graph(rng, 6, true);
  CHECK(categorical_product(g, point) == g);
}

TEST_CASE("categorical product matches pair enumeration") {
  std::mt19937 rng(202);
  for (int trial = 0; trial < 150; ++trial) {
    const Graph t = random_graph(rng, 1 + trial % 5, true);
    const Graph g = random_graph(rng, 1 + (trial / 5) % 5, true);
    const Graph p = categorical_product(t, g);
    const int nt = t.vertex_count(), ng = g.vertex_count();
    REQUIRE(p.vertex_count() == nt * ng);
    std::set<std::pair<int, int>> want;
    for (int a = 1; a <= nt; ++a)
      for (int b = 1; b <= ng; ++b)
        for (int c = 1; c <= nt; ++c)
          for (int d = 1; d <= ng; ++d)
            if (t.adjacent(a, c) && g.adjacent(b, d)) {
              const int x = (a - 1) * ng + b, y = (c - 1) * ng + d;
              want.insert({std::min(x, y), std::max(x, y)});
            }
    CHECK(edge_set(p) == want);
    for (int a = 1; a <= nt; ++a)
      for (int b = 1; b <= ng; ++b) CHECK(p.has_loop(product_vertex(a, b, ng)) == (t.has_loop(a) && g.has_loop(b)));
  }
}

TEST_CASE("induced subgraphs") {
  const std::vector<int> s{1, 2, 4};
  auto sub = induced_subgraph(cycle_graph(6), s);
  CHECK(sub.graph.vertex_count() == 3);
  CHECK(edge_set(sub.graph) == std::set<std::pair<int, int>>{{1, 2}});
  CHECK(sub.original_vertex == std::vector<int>{1, 2, 4});
  const std::vector<int> pair{1, 3};
  CHECK(induced_subgraph(cycle_graph(5), pair).graph.edge_count() == 0);
  const std::vector<int> all{1, 2, 3, 4, 5};
  CHECK(induced_subgraph(cycle_graph(5), all).graph == cycle_graph(5));
  const std::vector<int> bad{1, 9};
  CHECK_THROWS_AS(induced_subgraph(cycle_graph(5), bad), InvalidParameter);
}

TEST_CASE("induced subgraph commutes with strong complement") {
  std::mt19937 rng(303);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(rng, 2 + trial % 7, true);
    std::vector<int> s;
    for (int v = 1; v <= g.vertex_count(); ++v)
      if (coin(rng)) s.push_back(v);
    if (s.empty()) s.push_back(1);
    CHECK(strong_complement(induced_subgraph(g, s).graph) == induced_subgraph(strong_complement(g), s).graph);
  }
}

TEST_CASE("graph text and json round trips") {
  std::mt19937 rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    const Graph g = random_graph(rng, 1 + trial % 7, true);
    CHECK(parse_graph_text(to_text(g)) == g);
    CHECK(graph_from_json(to_json(g)) == g);
    CHECK(parse_graph(to_text(g)) == g);
    CHECK(parse_graph(to_json(g).dump()) == g);
  }
  CHECK(parse_graph_text("n 3\ne 1 2\ne 3 3\n").has_loop(3));
  CHECK_THROWS_AS(parse_graph_text("n 2\ne 1 5\n"), InvalidParameter);
  CHECK_THROWS_AS(parse_graph_text("n 2\ne 1 2\ne 2 1\n"), InvalidParameter);
  CHECK(parse_standard_spec("cycle:5") == cycle_graph(5));
  CHECK(parse_standard_spec("complete:4") == complete_graph(4));
  CHECK_THROWS_AS(parse_standard_spec("wheel:5"), InvalidParameter);
}
