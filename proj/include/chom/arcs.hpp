#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "chom/chain_complex.hpp"
#include "chom/homology.hpp"
#include "chom/morse.hpp"

namespace chom {

enum class Ring { Z, Z2 };
std::string to_string(Ring r);

// Cyclic interval [start, end] on Z/m, vertices 1..m, read clockwise.
struct Arc {
  int start = 1;
  int end = 1;
  friend bool operator==(const Arc&, const Arc&) = default;
};

struct ArcPicture {
  int m = 0;
  std::vector<Arc> arcs;  // sorted by start
  std::uint64_t support = 0;  // bit v-1 for v in S

  int two_gaps() const;
  std::uint64_t left_endpoints() const;
  std::string key() const;  // e.g. "[1,2][5,6]"
};

// Every picture of t arcs (at least 2 vertices each) separated by gaps of 1 or 2 vertices.
std::vector<ArcPicture> enumerate_arc_pictures(int m, int t);

// Sign relating the generators with representatives V and W = V - {from} + {to}
// inside one arc. from and to must be adjacent vertices of that arc.
int representative_shift_sign(const ArcPicture& pic, int n, int arc, int from, int to);

// Chain degree i = number of 2-gaps, which is cochain degree p = m - t - 1 - i.
struct ArcComplex {
  int m = 0, n = 0, t = 0;
  Ring ring = Ring::Z;
  std::vector<std::vector<ArcPicture>> pictures;  // [i][index]
  ChainComplex chain;

  int cochain_degree(int i) const { return m - t - 1 - i; }
};

ArcComplex build_arc_complex(int m, int n, int t, Ring ring);

struct ArcIsoReport {
  bool ok = true;
  std::string detail;
  std::size_t cells = 0;
};

// Gap collections against the cells of Φ_{t,m,3}, boundaries compared mod 2.
ArcIsoReport arc_phi_isomorphism(int m, int t);

enum class Parity { even, odd };
std::string to_string(Parity p);

// (m+t+1)(n+1) odd ↔ odd.
Parity alpha_parity(int m, int n, int t);

struct AlphaComputation {
  int alpha = 0;
  std::size_t edges = 0;
  std::size_t vertices = 0;
  Parity parity() const { return alpha % 2 ? Parity::odd : Parity::even; }
};

// Grinds the front complex of Φ_{t,m,3}, carries the matching to the integer
// arc complex, collapses every thin cube onto a monotone path and counts the
// edges of the resulting cycle whose two boundary coefficients agree.
AlphaComputation alpha_from_complex(int m, int n, int t);

// Row complex of all t-arc pictures (S, A) with S a proper subset, over Z2,
// chain degree m - 1 - |S|.
struct RowComplex {
  int m = 0, t = 0;
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> cells;  // (S, marked vertices)
  ChainComplex chain;
};

RowComplex build_row_complex(int m, int t);
// Pairs (S, A) with (S xor {x}, A), x the least vertex outside Â.
MorseMatching row_matching(const RowComplex& row);

struct E2Entry {
  int p = 0;
  int q = 0;
  std::string group;  // "Z", "Z2", "Z^3", "Z2^3" or "0"
};

struct E2Table {
  int m = 0, n = 0;
  Ring ring = Ring::Z;
  std::vector<E2Entry> entries;  // sorted by (p, q)
  std::string group(int p, int q) const;  // "0" when absent
};

E2Table e2_table(int m, int n, Ring ring);
nlohmann::json to_json(const E2Table& t);

// Homology of the arc complex as E2 groups at (p, t(n-2)).
std::vector<E2Entry> arc_e2_entries(const ArcComplex& a);

}  // namespace chom
