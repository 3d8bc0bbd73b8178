#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace chom {

// Finite undirected graph on vertices 1..vertex_count. Loops are allowed,
// multi-edges are not. Values are immutable once constructed.
class Graph {
 public:
  using Edge = std::pair<int, int>;  // normalized so that first <= second

  Graph() = default;
  explicit Graph(int vertex_count);
  Graph(int vertex_count, std::span<const Edge> edges);

  int vertex_count() const noexcept { return n_; }
  bool adjacent(int u, int v) const;
  bool has_loop(int v) const { return adjacent(v, v); }

  // Sorted list of normalized edges.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  // Bitmask of neighbours of v (bit j-1 for vertex j); requires vertex_count <= 32.
  std::uint32_t neighbor_mask(int v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adjacency_;  // n_ x n_ row-major
};

enum class StandardKind { cycle, complete, path };

Graph make_standard(StandardKind kind, int k);
inline Graph cycle_graph(int k) { return make_standard(StandardKind::cycle, k); }
inline Graph complete_graph(int k) { return make_standard(StandardKind::complete, k); }
inline Graph path_graph(int k) { return make_standard(StandardKind::path, k); }

// Edges are exactly the non-edges of G in V x V, loops included.
Graph strong_complement(const Graph& g);

// Vertex (t, g) is numbered (t-1)*|V(G)| + g; (t,g) ~ (t',g') iff t ~ t' and g ~ g'.
Graph categorical_product(const Graph& t, const Graph& g);
int product_vertex(int t_vertex, int g_vertex, int g_size);

struct InducedSubgraph {
  Graph graph;
  // original_vertex[i] is the vertex of the parent graph that became vertex i+1.
  std::vector<int> original_vertex;
};

// Restriction to S, relabelled 1..|S| preserving order. Duplicates in S are ignored.
InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> subset);

// Text format: "n <count>" followed by "e <u> <v>" lines.
std::string to_text(const Graph& g);
Graph parse_graph_text(std::string_view text);

nlohmann::json to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

// Accepts either format, detected from the first non-blank character.
Graph parse_graph(std::string_view text);

// "cycle:5", "complete:4", "path:3".
Graph parse_standard_spec(std::string_view spec);

}  // namespace chom
