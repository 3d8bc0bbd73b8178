#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "chom/chain_complex.hpp"

namespace chom {

struct CellRef {
  int degree = 0;
  std::uint32_t index = 0;

  friend bool operator==(const CellRef&, const CellRef&) = default;
  friend auto operator<=>(const CellRef&, const CellRef&) = default;
};

// lower sits in degree d, upper in degree d+1.
struct MatchedPair {
  CellRef lower;
  CellRef upper;
  std::int64_t coefficient = 0;  // [∂ upper : lower]
};

struct MorseMatching {
  std::vector<MatchedPair> pairs;
};

struct AcyclicityReport {
  bool acyclic = true;
  // On failure: a directed cycle, each cell followed by its successor, closing on the first.
  std::vector<CellRef> witness;
};

// Checks the matching is well formed (distinct cells, real incidences) and
// that the modified Hasse digraph has no directed cycle.
AcyclicityReport verify_acyclic(const ChainComplex& c, const MorseMatching& m);

struct MorseReduction {
  ChainComplex complex;
  // critical[d - min_degree][i] is the original index of critical cell i in degree d.
  std::vector<std::vector<std::uint32_t>> critical;
};

// Zig-zag differential on the critical cells. With modulus > 0 all coefficients
// are taken mod modulus (symmetric residues are not used; values lie in [0, modulus)).
MorseReduction morse_reduce(const ChainComplex& c, const MorseMatching& m, std::int64_t modulus = 0);

}  // namespace chom
