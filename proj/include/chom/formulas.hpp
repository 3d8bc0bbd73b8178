#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "chom/errors.hpp"
#include "chom/graphs.hpp"
#include "chom/homology.hpp"

namespace chom {

struct GradedGroup {
  int dim = 0;
  std::size_t free_rank = 0;
  std::vector<std::int64_t> torsion;  // invariant factors
  friend bool operator==(const GradedGroup&, const GradedGroup&) = default;
};

// Strictly increasing dimensions, no zero summands.
using GradedGroupList = std::vector<GradedGroup>;

nlohmann::json to_json(const GradedGroupList& g);
std::string describe(const GradedGroupList& g);  // same notation as describe(HomologyResult)
GradedGroupList graded_from(const HomologyResult& h);

GradedGroupList ind_cycle_formula(int m);
GradedGroupList homplus_cycle_formula(int m, int n);
// Reduced integral cohomology of Hom(C_m, K_n), m >= 5 and n >= 4.
GradedGroupList hom_cycle_cohomology(int m, int n);

enum class Vanishing { promised_zero, exception, out_of_range };
std::string to_string(Vanishing v);
// H̃^i(Hom+(C_m,K_n)) = 0 is promised for i <= m+n-4 except at (7,4,7).
Vanishing vanishing_check(int m, int n, int i);

// χ̃ of the complexes, computed from cell counts.
BigInt reduced_euler_hom(const Graph& t, const Graph& g, const BuildLimits& limits = {});
BigInt reduced_euler_hom_plus(const Graph& t, const Graph& g, const BuildLimits& limits = {});

// (χ̃(Hom+(T,G)), Σ_{∅≠S} (-1)^(|S|+1) χ̃(Hom(T[S],G)))
std::pair<BigInt, BigInt> euler_hom_plus_identity(const Graph& t, const Graph& g, const BuildLimits& limits = {});
// Σ_{∅≠S} (-1)^(|S|+1) χ̃(Hom+(T[S],G))
BigInt euler_hom_via_mobius(const Graph& t, const Graph& g, const BuildLimits& limits = {});
// Σ_{∅≠S} (-1)^(n+|S|) χ̃(Ind(T[S]))^n
BigInt euler_hom_kn(const Graph& t, int n);
BigInt euler_complete(int m, int n);
BigInt euler_cycle(int m, int n);

}  // namespace chom
