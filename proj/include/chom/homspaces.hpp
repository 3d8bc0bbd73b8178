#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "chom/cell_complex.hpp"
#include "chom/errors.hpp"
#include "chom/graphs.hpp"
#include "chom/homology.hpp"
#include "chom/spectral.hpp"

namespace chom {

// Simplicial complex on vertices 1..vertex_count (at most 64), faces as bitmasks
// (bit v-1 for vertex v). faces[k] holds the faces with k vertices; faces[0] is {∅}.
struct SimplicialComplex {
  int vertex_count = 0;
  std::vector<std::vector<std::uint64_t>> faces;

  int dimension() const { return static_cast<int>(faces.size()) - 2; }
  std::size_t face_count() const;  // excludes ∅
  // Augmented chains, simplices oriented by increasing vertex label.
  ChainComplex chains() const;
  std::int64_t reduced_euler() const;
};

// Independent sets; a looped vertex is not independent even on its own.
SimplicialComplex independence_complex(const Graph& g, const BuildLimits& limits = {});

// Vertices of y are shifted past those of x.
SimplicialComplex join_complex(const SimplicialComplex& x, const SimplicialComplex& y);

// Cells of Hom(T,G) and Hom+(T,G). A cell η is stored as a mask over the
// product vertices: bit (x-1)|V(G)| + (y-1) is set iff y ∈ η(x).
struct HomComplex {
  Graph source;  // T
  Graph target;  // G
  bool plus = false;
  CellComplex cells;
  // masks[degree][index]; shared with the label callback of `cells`
  std::shared_ptr<const std::vector<std::vector<std::uint64_t>>> masks;
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> lookup;

  std::uint64_t mask(int degree, std::uint32_t index) const { return (*masks)[degree][index]; }
  std::size_t count(int degree) const;
  // η(x) as a bitmask over V(G).
  std::uint32_t value(int degree, std::uint32_t index, int x) const;
  std::string label(std::uint64_t mask) const;
  std::optional<std::uint32_t> find(int degree, std::uint64_t mask) const;
};

// Prodsimplicial Hom complex with the standard orientation: removing v from
// η(t) carries the sign (-1)^(k+d-1), k the position of v in η(t) and
// d = 1 - t + Σ_{j<t} |η(j)|.
HomComplex hom_complex(const Graph& t, const Graph& g, const BuildLimits& limits = {});

// Simplicial Hom+ with vertices (x,y) in lexicographic order.
HomComplex hom_plus(const Graph& t, const Graph& g, const BuildLimits& limits = {});

// Unreduced chains of Hom+ with level |supp η| - 1.
FilteredChainComplex filtration_by_support(const HomComplex& hp);

// (level p, total degree) -> number of Hom+ cells.
std::map<std::pair<int, int>, std::size_t> support_census(const HomComplex& hp);

struct RhoReport {
  bool ok = true;
  std::string witness;  // cell pair and the disagreeing coefficients
  std::size_t checked = 0;
};

// Compares every incidence of Hom(T,G) with the matching full-support
// incidence of Hom+(T,G) twisted by (-1)^c(η), c(η) = Σ_{i even} |η(i)|.
RhoReport rho_check(const Graph& t, const Graph& g, const BuildLimits& limits = {});

int rho_exponent(const std::vector<std::uint32_t>& eta_values);

// Number of cells of Hom(C_m, K_n) in each dimension, by a transfer matrix
// over nonempty subsets of [n] (no enumeration).
std::vector<BigInt> hom_cycle_cell_census(int m, int n);

// Reduced Euler characteristic from a census (the empty cell contributes -1).
BigInt reduced_euler_from_census(const std::vector<BigInt>& census);

}  // namespace chom
