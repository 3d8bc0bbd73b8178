#include "chom/cell_complex.hpp"

#include <algorithm>
#include <numeric>

namespace chom {

std::string to_string(CellKind k) {
  switch (k) {
    case CellKind::simplicial:
      return "simplicial";
    case CellKind::prodsimplicial:
      return "prodsimplicial";
    case CellKind::cubical:
      return "cubical";
    case CellKind::generic:
      break;
  }
  return "generic";
}

int CellComplex::dimension() const {
  for (int d = chain.max_degree(); d >= 0; --d)
    if (chain.size(d) > 0) return d;
  return -1;
}

std::size_t CellComplex::cell_count() const {
  std::size_t n = 0;
  for (int d = 0; d <= chain.max_degree(); ++d) n += chain.size(d);
  return n;
}

std::string CellComplex::cell_label(int degree, std::uint32_t index) const {
  if (degree == -1) return "aug";
  if (label) return label(degree, index);
  return std::to_string(degree) + ":" + std::to_string(index);
}

nlohmann::json to_json(const CellComplex& c) {
  nlohmann::json degrees = nlohmann::json::array();
  for (int d = c.chain.min_degree(); d <= c.chain.max_degree(); ++d) {
    nlohmann::json cells = nlohmann::json::array();
    for (std::uint32_t j = 0; j < c.chain.size(d); ++j) {
      nlohmann::json bd = nlohmann::json::array();
      for (const auto& e : c.chain.boundary(d, j)) bd.push_back({e.index, e.value});
      nlohmann::json cell{{"index", j}, {"label", c.cell_label(d, j)}, {"boundary", bd}};
      if (c.levels) cell["level"] = (*c.levels)[d - c.chain.min_degree()][j];
      cells.push_back(std::move(cell));
    }
    degrees.push_back({{"degree", d}, {"cells", cells}});
  }
  return {{"kind", to_string(c.kind)}, {"augmented", c.chain.augmented()}, {"degrees", degrees}};
}

ComponentSplit split_components(const ChainComplex& c) {
  const std::size_t nv = c.size(0);
  std::vector<std::uint32_t> parent(nv);
  std::iota(parent.begin(), parent.end(), 0u);
  auto root = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint32_t j = 0; j < c.size(1); ++j) {
    const auto& col = c.boundary(1, j);
    for (std::size_t k = 1; k < col.size(); ++k) parent[root(col[k].index)] = root(col[0].index);
  }
  ComponentSplit out;
  std::vector<std::uint32_t> id(nv, 0xffffffffu);
  out.component_of.resize(std::max(c.max_degree() + 1, 0));
  std::size_t count = 0;
  if (!out.component_of.empty()) {
    for (std::uint32_t v = 0; v < nv; ++v) {
      std::uint32_t r = root(v);
      if (id[r] == 0xffffffffu) id[r] = static_cast<std::uint32_t>(count++);
      out.component_of[0].push_back(id[r]);
    }
  }
  for (int d = 1; d <= c.max_degree(); ++d)
    for (std::uint32_t j = 0; j < c.size(d); ++j) {
      const auto& col = c.boundary(d, j);
      // a cell with empty boundary in positive degree cannot occur in the complexes built here
      out.component_of[d].push_back(col.empty() ? 0 : out.component_of[d - 1][col[0].index]);
    }
  out.components.assign(count, ChainComplex(true));
  std::vector<std::vector<std::uint32_t>> local(out.component_of.size());
  std::vector<std::uint32_t> next(count, 0);
  for (int d = 0; d <= c.max_degree(); ++d) {
    std::fill(next.begin(), next.end(), 0u);
    for (std::uint32_t j = 0; j < c.size(d); ++j) {
      std::uint32_t k = out.component_of[d][j];
      SparseColumn col;
      if (d == 0) {
        col.push_back({0, 1});
      } else {
        for (const auto& e : c.boundary(d, j)) col.push_back({local[d - 1][e.index], e.value});
      }
      local[d].push_back(next[k]++);
      out.components[k].add_cell(d, std::move(col));
    }
  }
  return out;
}

}  // namespace chom
