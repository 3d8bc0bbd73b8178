#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "chom/chain_complex.hpp"

namespace chom {

using BigInt = boost::multiprecision::cpp_int;

struct HomologyGroup {
  int degree = 0;
  std::size_t betti = 0;
  std::vector<std::int64_t> torsion;  // each entry >= 2, each divides the next

  bool is_zero() const { return betti == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

enum class Variance { homology, cohomology };

struct HomologyResult {
  bool reduced = false;
  Variance variance = Variance::homology;
  // One entry per degree from the lowest reported degree upward.
  std::vector<HomologyGroup> groups;

  const HomologyGroup* find(int degree) const;
  std::size_t betti(int degree) const;
  std::vector<std::int64_t> torsion(int degree) const;
  std::vector<HomologyGroup> nonzero() const;

  // Same nonzero groups, ignoring `reduced` and trailing zero degrees.
  bool same_groups(const HomologyResult& other) const;
};

HomologyResult homology_integer(const ChainComplex& c, bool check_boundary = true);

struct BettiNumbers {
  int min_degree = 0;
  std::vector<std::size_t> values;

  std::size_t at(int degree) const;
  friend bool operator==(const BettiNumbers&, const BettiNumbers&) = default;
};

BettiNumbers homology_mod_p(const ChainComplex& c, int p, bool check_boundary = true);

// Predicted mod-p Betti numbers from integer homology (universal coefficients).
BettiNumbers mod_p_from_integer(const HomologyResult& h, int p);

std::int64_t euler_characteristic(const ChainComplex& c);

// Free parts agree; torsion of H^d is torsion of H_{d-1}.
HomologyResult to_cohomology(const HomologyResult& h);

// Invariant factors (absolute values > 0) of a dense integer matrix given row-major.
std::vector<BigInt> smith_invariants(std::size_t rows, std::size_t cols, std::vector<BigInt> entries);

bool is_prime(int p);

nlohmann::json to_json(const HomologyResult& h);
// "Z(1) + Z^14(2)", "0" for the trivial result.
std::string describe(const HomologyResult& h);

}  // namespace chom
