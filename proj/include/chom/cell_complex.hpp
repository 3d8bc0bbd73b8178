#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chom/chain_complex.hpp"

namespace chom {

enum class CellKind { simplicial, prodsimplicial, cubical, generic };

std::string to_string(CellKind k);

// Oriented finite cell complex. The chain complex carries the boundary; the
// label callback renders a cell in the notation of whatever built it.
struct CellComplex {
  CellKind kind = CellKind::generic;
  ChainComplex chain;
  std::function<std::string(int degree, std::uint32_t index)> label;
  std::optional<std::vector<std::vector<int>>> levels;  // per degree, per cell

  int dimension() const;  // highest degree holding a cell, -1 if none
  std::size_t cell_count() const;  // excludes the augmentation cell
  std::string cell_label(int degree, std::uint32_t index) const;
};

nlohmann::json to_json(const CellComplex& c);

// Connected components (through 1-cells), each as an augmented chain complex.
// component_of[d][i] gives the component of cell i in degree d >= 0.
struct ComponentSplit {
  std::vector<ChainComplex> components;
  std::vector<std::vector<std::uint32_t>> component_of;
};

ComponentSplit split_components(const ChainComplex& c);

}  // namespace chom
