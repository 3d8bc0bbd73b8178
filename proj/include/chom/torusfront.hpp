#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "chom/cell_complex.hpp"
#include "chom/homology.hpp"
#include "chom/morse.hpp"

namespace chom {

// ---- Φ_{m,n,g} -------------------------------------------------------------

// A token is {start} or {start, start+1 mod n}, elements numbered 1..n.
struct PhiToken {
  int start = 1;
  bool pair = false;
  friend bool operator==(const PhiToken&, const PhiToken&) = default;
};

struct PhiComplex {
  int m = 0, n = 0, g = 0;
  CellComplex cells;
  std::vector<std::vector<std::vector<PhiToken>>> tokens;  // [degree][index] sorted by start

  std::string key(int degree, std::uint32_t index) const;
};

// Tokens must be pairwise at circular distance >= g. With a single token the
// forward gap from the token back to itself is used, so Φ_{1,n,g} is empty
// for n < g. Φ_{0,n,g} is one point.
PhiComplex build_phi(int m, int n, int g);

// ---- torus fronts ------------------------------------------------------------

struct FrontParams {
  int north = 0;
  int east = 0;
  int gap = 1;
  int band = 1;

  int length() const { return north + east; }
  friend bool operator==(const FrontParams&, const FrontParams&) = default;
};

// Canonical representative: the grid path from (-offset, offset) spelled by word.
struct TorusFront {
  int offset = 0;
  std::string word;  // 'N' and 'E'
  friend bool operator==(const TorusFront&, const TorusFront&) = default;
};

// base is the member with the northwestern choice at every position.
struct Flip {
  TorusFront base;
  std::vector<int> positions;  // sorted, pairwise cyclic distance >= 2
  friend bool operator==(const Flip&, const Flip&) = default;
  int dimension() const { return static_cast<int>(positions.size()); }
};

std::string key(const Flip& f);
bool satisfies_gap(const std::string& word, int gap);
bool is_nw_corner(const TorusFront& t, int i);
bool is_se_corner(const TorusFront& t, int i);
// Elementary flip at vertex i (swap of steps i-1 and i).
TorusFront flip_corner(const TorusFront& t, int i, int band);
// The member choosing the southeastern option exactly on `choice` (bitmask over positions).
TorusFront member(const Flip& f, std::uint32_t choice, int band);

struct FrontComplex {
  FrontParams params;
  CellComplex cells;
  std::vector<std::vector<Flip>> flips;  // [degree][index]
  std::unordered_map<std::string, std::uint32_t> index;

  std::optional<std::uint32_t> find(const Flip& f) const;
};

FrontComplex build_front_complex(int north, int east, int gap);
FrontComplex build_band_front_complex(const FrontParams& params);

// ---- dictionary --------------------------------------------------------------

struct DictionaryReport {
  bool ok = true;
  std::string detail;
  std::size_t cells = 0;
};

// S ↦ word with step i northbound iff i ∈ S; {a,a+1} ↦ flip at vertex a mod n.
// Checks a dimension-preserving bijection that carries every boundary entry
// to a boundary entry of the same absolute value. Needs n >= 3 and not (m = 1, n = g).
DictionaryReport phi_front_dictionary(int m, int n, int g);
Flip phi_cell_to_flip(const std::vector<PhiToken>& tokens, int n);

// ---- width -------------------------------------------------------------------

enum class WidthClass { wide, thin, very_thin };

struct Width {
  std::int64_t spread = 0;  // Δ
  WidthClass kind = WidthClass::wide;
};

// c = north·x - east·y at each vertex of the canonical representative.
std::vector<std::int64_t> level_values(const TorusFront& t, const FrontParams& p);
Width width_spread(const TorusFront& t, const FrontParams& p);
Width width_spread(const Flip& f, const FrontParams& p);
WidthClass classify(std::int64_t spread, const FrontParams& p);
std::string to_string(WidthClass k);

struct ExtremeCorners {
  std::vector<int> northwest;
  std::vector<int> southeast;
};

ExtremeCorners extreme_corners(const TorusFront& t, const FrontParams& p);
ExtremeCorners extreme_corners(const Flip& f, const FrontParams& p);

// ---- grinding ----------------------------------------------------------------

struct GrindResult {
  MorseMatching matching;
  FrontComplex thin;
  std::vector<std::string> trace;  // "collapse <Δ> <σ↓> -> <σ↑>"
  std::size_t removed_cells = 0;
};

// Throws ContractViolation when a partner cell is missing or the matching is cyclic.
GrindResult grind(const FrontComplex& c);

struct GarlandDescriptor {
  std::size_t cube_count = 0;
  int cube_dim = 0;  // -1 when the maximal cubes have mixed dimensions
  std::size_t circle_count = 0;
  bool degenerate = false;
  friend bool operator==(const GarlandDescriptor&, const GarlandDescriptor&) = default;
};

nlohmann::json to_json(const GarlandDescriptor& g);

// Expected descriptor of the thin part of one band front complex.
GarlandDescriptor thin_garland(const FrontParams& params);
// Expected descriptor of the winding component of Hom(C_m, C_n) with r northbound steps.
GarlandDescriptor cycle_map_garland(int m, int n, int r);

struct ThinCensus {
  GarlandDescriptor garland;
  bool antipodal_ok = true;  // each maximal cube has exactly its two extreme members very thin
  std::string detail;
};

ThinCensus census_thin(const FrontComplex& thin);

// ---- maps between cycles -----------------------------------------------------

struct CycleComponent {
  int m = 0, n = 0, w = 0, r = 0;
  bool degenerate = false;  // r = 0: vertices only
  std::vector<FrontComplex> fronts;  // one band complex, or two when n is even
  CellComplex hom_part;  // the winding-w subcomplex of Hom(C_m, C_n)
  bool certified = false;
  std::string certificate;
};

int winding_number(const std::vector<int>& values, int n);  // values of a homomorphism C_m → C_n
CycleComponent cycle_component(int m, int n, int w);
std::vector<int> admissible_windings(int m, int n);

// Disjoint union of the chain complexes (augmented iff both are).
ChainComplex disjoint_union(const ChainComplex& a, const ChainComplex& b);

}  // namespace chom
