#include "chom/formulas.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "chom/homspaces.hpp"

namespace chom {

namespace {

void add(std::map<int, GradedGroup>& acc, int dim, std::size_t rank, std::vector<std::int64_t> torsion = {}) {
  auto& g = acc[dim];
  g.dim = dim;
  g.free_rank += rank;
  g.torsion.insert(g.torsion.end(), torsion.begin(), torsion.end());
  std::sort(g.torsion.begin(), g.torsion.end());
}

GradedGroupList finish(const std::map<int, GradedGroup>& acc) {
  GradedGroupList out;
  for (const auto& [d, g] : acc)
    if (g.free_rank || !g.torsion.empty()) out.push_back(g);
  return out;
}

int kpart(int m) { return (m + 1) / 3; }

BigInt pow_big(BigInt base, int e) {
  BigInt r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

BigInt sign(long long e) { return e % 2 ? BigInt(-1) : BigInt(1); }

BigInt chi_of(const ChainComplex& c) {
  BigInt chi = c.augmented() ? -1 : 0;
  for (int d = 0; d <= c.max_degree(); ++d) chi += (d % 2 == 0) ? BigInt(c.size(d)) : BigInt(-static_cast<long long>(c.size(d)));
  return chi;
}

template <class F>
BigInt subset_sum(const Graph& t, F term) {
  const int nv = t.vertex_count();
  if (nv > 20) throw UnsupportedParameter("subset sums support at most 20 vertices");
  BigInt total = 0;
  for (std::uint32_t s = 1; s < (1u << nv); ++s) {
    std::vector<int> subset;
    for (int v = 1; v <= nv; ++v)
      if (s >> (v - 1) & 1) subset.push_back(v);
    total += term(induced_subgraph(t, subset).graph, static_cast<int>(subset.size()));
  }
  return total;
}

}  // namespace

nlohmann::json to_json(const GradedGroupList& g) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& x : g) out.push_back({{"dim", x.dim}, {"free_rank", x.free_rank}, {"torsion", x.torsion}});
  return out;
}

std::string describe(const GradedGroupList& g) {
  std::ostringstream out;
  bool first = true;
  auto term = [&](const std::string& s) {
    if (!first) out << " + ";
    out << s;
    first = false;
  };
  for (const auto& x : g) {
    const std::string d = "(" + std::to_string(x.dim) + ")";
    if (x.free_rank == 1) term("Z" + d);
    if (x.free_rank > 1) term("Z^" + std::to_string(x.free_rank) + d);
    for (auto t : x.torsion) term("Z" + std::to_string(t) + d);
  }
  return first ? "0" : out.str();
}

GradedGroupList graded_from(const HomologyResult& h) {
  GradedGroupList out;
  for (const auto& g : h.nonzero()) out.push_back({g.degree, g.betti, g.torsion});
  return out;
}

GradedGroupList ind_cycle_formula(int m) {
  if (m < 2) throw InvalidParameter("ind_cycle_formula needs m >= 2");
  const int k = kpart(m);
  std::map<int, GradedGroup> acc;
  add(acc, k - 1, m % 3 == 0 ? 2 : 1);
  return finish(acc);
}

GradedGroupList homplus_cycle_formula(int m, int n) {
  if (m < 2 || n < 3) throw InvalidParameter("homplus_cycle_formula needs m >= 2 and n >= 3");
  if (n > 62) throw UnsupportedParameter("homplus_cycle_formula supports n <= 62");
  const int k = kpart(m);
  std::map<int, GradedGroup> acc;
  add(acc, n * k - 1, m % 3 == 0 ? (std::size_t{1} << n) : 1);
  return finish(acc);
}

GradedGroupList hom_cycle_cohomology(int m, int n) {
  if (m < 5 || n < 4) throw UnsupportedParameter("hom_cycle_cohomology is only known for m >= 5 and n >= 4");
  if (n > 62) throw UnsupportedParameter("hom_cycle_cohomology supports n <= 62");
  std::map<int, GradedGroup> acc;
  for (int t = 1; t <= (m - 2) / 3; ++t) {
    if (n % 2 == 1 || (m + t) % 2 == 1) {
      add(acc, t * n - 3 * t, 1);
      add(acc, t * n - 3 * t + 1, 1);
    } else {
      add(acc, t * n - 3 * t + 1, 0, {2});
    }
  }
  const int k = kpart(m);
  if (m == 3 * k) {
    add(acc, n * k - m, (std::size_t{1} << n) - 3);
  } else if (m == 3 * k + 1) {
    add(acc, n * k - m + 2, 1);
  } else {
    add(acc, n * k - m, 1);
  }
  return finish(acc);
}

std::string to_string(Vanishing v) {
  switch (v) {
    case Vanishing::promised_zero:
      return "promised_zero";
    case Vanishing::exception:
      return "exception";
    case Vanishing::out_of_range:
      break;
  }
  return "out_of_range";
}

Vanishing vanishing_check(int m, int n, int i) {
  if (m < 5 || n < 4) throw InvalidParameter("vanishing_check needs m >= 5 and n >= 4");
  if (i > m + n - 4) return Vanishing::out_of_range;
  if (m == 7 && n == 4 && i == 7) return Vanishing::exception;
  return Vanishing::promised_zero;
}

BigInt reduced_euler_hom(const Graph& t, const Graph& g, const BuildLimits& limits) {
  return chi_of(hom_complex(t, g, limits).cells.chain);
}

BigInt reduced_euler_hom_plus(const Graph& t, const Graph& g, const BuildLimits& limits) {
  return chi_of(hom_plus(t, g, limits).cells.chain);
}

std::pair<BigInt, BigInt> euler_hom_plus_identity(const Graph& t, const Graph& g, const BuildLimits& limits) {
  BigInt rhs = subset_sum(t, [&](const Graph& sub, int size) { return sign(size + 1) * reduced_euler_hom(sub, g, limits); });
  return {reduced_euler_hom_plus(t, g, limits), rhs};
}

BigInt euler_hom_via_mobius(const Graph& t, const Graph& g, const BuildLimits& limits) {
  return subset_sum(t, [&](const Graph& sub, int size) { return sign(size + 1) * reduced_euler_hom_plus(sub, g, limits); });
}

BigInt euler_hom_kn(const Graph& t, int n) {
  if (n < 1) throw InvalidParameter("euler_hom_kn needs n >= 1");
  return subset_sum(t, [&](const Graph& sub, int size) {
    return sign(n + size) * pow_big(BigInt(independence_complex(sub).reduced_euler()), n);
  });
}

BigInt euler_complete(int m, int n) {
  if (m < 1 || n < m) throw InvalidParameter("euler_complete needs n >= m >= 1");
  BigInt total = 0;
  BigInt binom = m;  // C(m, k+1), starting at k = 0
  for (int k = 1; k <= m - 1; ++k) {
    binom = binom * (m - k) / (k + 1);
    total += sign(n + k + 1) * binom * pow_big(BigInt(k), n);
  }
  return total;
}

BigInt euler_cycle(int m, int n) {
  if (m < 5 || n < 4) throw InvalidParameter("euler_cycle needs m >= 5 and n >= 4");
  const int k = kpart(m);
  BigInt s = sign(static_cast<long long>(n) * k - m);
  if (m % 3 == 0) s *= pow_big(2, n) - 3;
  return s;
}

}  // namespace chom
