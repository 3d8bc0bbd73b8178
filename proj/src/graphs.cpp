#include "chom/graphs.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "chom/errors.hpp"

namespace chom {

Graph::Graph(int vertex_count) : n_(vertex_count) {
  if (vertex_count < 0) throw InvalidParameter("negative vertex count");
  adjacency_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

Graph::Graph(int vertex_count, std::span<const Edge> edges) : Graph(vertex_count) {
  for (auto [u, v] : edges) {
    check_vertex(u);
    check_vertex(v);
    if (u > v) std::swap(u, v);
    auto& cell = adjacency_[static_cast<std::size_t>(u - 1) * n_ + (v - 1)];
    if (cell) throw InvalidParameter("duplicate edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    cell = 1;
    adjacency_[static_cast<std::size_t>(v - 1) * n_ + (u - 1)] = 1;
    edges_.emplace_back(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
}

void Graph::check_vertex(int v) const {
  if (v < 1 || v > n_) {
    throw InvalidParameter("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(n_));
  }
}

bool Graph::adjacent(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  return adjacency_[static_cast<std::size_t>(u - 1) * n_ + (v - 1)] != 0;
}

std::uint32_t Graph::neighbor_mask(int v) const {
  if (n_ > 32) throw InvalidParameter("neighbor_mask needs at most 32 vertices");
  check_vertex(v);
  std::uint32_t mask = 0;
  for (int u = 1; u <= n_; ++u) {
    if (adjacency_[static_cast<std::size_t>(v - 1) * n_ + (u - 1)]) mask |= 1u << (u - 1);
  }
  return mask;
}

Graph make_standard(StandardKind kind, int k) {
  std::vector<Graph::Edge> edges;
  switch (kind) {
    case StandardKind::cycle:
      if (k < 3) throw InvalidParameter("cycle graph needs at least 3 vertices");
      for (int i = 1; i <= k; ++i) edges.emplace_back(i, i % k + 1);
      break;
    case StandardKind::complete:
      if (k < 1) throw InvalidParameter("complete graph needs at least 1 vertex");
      for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) edges.emplace_back(i, j);
      break;
    case StandardKind::path:
      if (k < 1) throw InvalidParameter("path graph needs at least 1 vertex");
      for (int i = 1; i < k; ++i) edges.emplace_back(i, i + 1);
      break;
  }
  return Graph(k, edges);
}

Graph strong_complement(const Graph& g) {
  std::vector<Graph::Edge> edges;
  for (int u = 1; u <= g.vertex_count(); ++u)
    for (int v = u; v <= g.vertex_count(); ++v)
      if (!g.adjacent(u, v)) edges.emplace_back(u, v);
  return Graph(g.vertex_count(), edges);
}

int product_vertex(int t_vertex, int g_vertex, int g_size) { return (t_vertex - 1) * g_size + g_vertex; }

Graph categorical_product(const Graph& t, const Graph& g) {
  const int gs = g.vertex_count();
  std::vector<Graph::Edge> edges;
  for (int t1 = 1; t1 <= t.vertex_count(); ++t1)
    for (int t2 = 1; t2 <= t.vertex_count(); ++t2) {
      if (!t.adjacent(t1, t2)) continue;
      for (int g1 = 1; g1 <= gs; ++g1)
        for (int g2 = 1; g2 <= gs; ++g2) {
          if (!g.adjacent(g1, g2)) continue;
          int a = product_vertex(t1, g1, gs);
          int b = product_vertex(t2, g2, gs);
          if (a <= b) edges.emplace_back(a, b);
        }
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(t.vertex_count() * gs, edges);
}

InducedSubgraph induced_subgraph(const Graph& g, std::span<const int> subset) {
  std::vector<int> vertices(subset.begin(), subset.end());
  for (int v : vertices)
    if (v < 1 || v > g.vertex_count())
      throw InvalidParameter("induced_subgraph: vertex " + std::to_string(v) + " out of range");
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::vector<Graph::Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i; j < vertices.size(); ++j)
      if (g.adjacent(vertices[i], vertices[j])) edges.emplace_back(int(i) + 1, int(j) + 1);
  return {Graph(static_cast<int>(vertices.size()), edges), std::move(vertices)};
}

std::string to_text(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.vertex_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

Graph parse_graph_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int n = -1;
  std::vector<Graph::Edge> edges;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    if (tag == "n") {
      if (n >= 0 || !(ls >> n) || n < 0)
        throw InvalidParameter("graph text line " + std::to_string(line_no) + ": bad vertex count");
    } else if (tag == "e") {
      int u = 0, v = 0;
      if (n < 0 || !(ls >> u >> v))
        throw InvalidParameter("graph text line " + std::to_string(line_no) + ": bad edge");
      edges.emplace_back(u, v);
    } else {
      throw InvalidParameter("graph text line " + std::to_string(line_no) + ": unknown tag '" + tag + "'");
    }
    std::string rest;
    if (ls >> rest) throw InvalidParameter("graph text line " + std::to_string(line_no) + ": trailing input");
  }
  if (n < 0) throw InvalidParameter("graph text: missing 'n' line");
  return Graph(n, edges);
}

nlohmann::json to_json(const Graph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"vertices", g.vertex_count()}, {"edges", edges}};
}

Graph graph_from_json(const nlohmann::json& j) {
  try {
    int n = j.at("vertices").get<int>();
    std::vector<Graph::Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidParameter("graph json: edge must be a pair");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return Graph(n, edges);
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidParameter(std::string("graph json: ") + ex.what());
  }
}

Graph parse_graph(std::string_view text) {
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    try {
      return graph_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& ex) {
      throw InvalidParameter(std::string("graph json: ") + ex.what());
    }
  }
  return parse_graph_text(text);
}

Graph parse_standard_spec(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw InvalidParameter("graph spec must look like kind:size");
  auto kind = spec.substr(0, colon);
  auto size_text = spec.substr(colon + 1);
  int k = 0;
  auto [ptr, ec] = std::from_chars(size_text.data(), size_text.data() + size_text.size(), k);
  if (ec != std::errc() || ptr != size_text.data() + size_text.size())
    throw InvalidParameter("graph spec: bad size '" + std::string(size_text) + "'");
  if (kind == "cycle") return cycle_graph(k);
  if (kind == "complete") return complete_graph(k);
  if (kind == "path") return path_graph(k);
  throw InvalidParameter("graph spec: unknown kind '" + std::string(kind) + "'");
}

}  // namespace chom
