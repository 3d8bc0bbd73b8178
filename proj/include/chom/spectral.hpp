#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "chom/chain_complex.hpp"

namespace chom {

// Chain complex with an integer level per cell. Faces never sit at a higher
// level than their cofaces, which is the cochain statement that the
// coboundary does not lower the level.
struct FilteredChainComplex {
  ChainComplex complex;
  std::vector<std::vector<int>> level;  // level[d - min_degree][index]

  int level_of(int degree, std::uint32_t index) const { return level[degree - complex.min_degree()][index]; }
  // Throws ContractViolation on the first boundary entry that raises the level.
  void check_filtration() const;
};

struct PageEntry {
  int p = 0;  // filtration level
  int q = 0;  // total degree minus p
  std::size_t dim = 0;

  friend bool operator==(const PageEntry&, const PageEntry&) = default;
};

struct SpectralPage {
  int r = 0;  // -1 marks the limit page
  std::vector<PageEntry> entries;  // nonzero only, sorted by (p, q)

  std::size_t dim(int p, int q) const;
};

struct SpectralPages {
  std::vector<SpectralPage> pages;  // r = 0..r_max
  SpectralPage infinity;
};

// Dimensions of E_r over the field with p elements for r = 0..r_max and the
// limit page. Uses persistence pairs of the filtration-ordered boundary matrix:
// a pair whose levels differ by l survives exactly to the pages r <= l.
SpectralPages spectral_pages(const FilteredChainComplex& f, int p, int r_max);

nlohmann::json to_json(const SpectralPage& page);

}  // namespace chom
