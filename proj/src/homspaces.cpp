#include "chom/homspaces.hpp"

#include <bit>
#include <sstream>

namespace chom {

namespace {

using MaskIndex = std::unordered_map<std::uint64_t, std::uint32_t>;

int popcount(std::uint64_t x) { return std::popcount(x); }

void enforce_limit(std::size_t count, const BuildLimits& limits, const char* what) {
  if (count > limits.max_cells)
    throw SizeLimitExceeded(std::string(what) + " has more cells than allowed", limits.max_cells, count);
}

// "1,2|3|-": values of η per vertex of T, '-' for the empty set.
std::string render_eta(std::uint64_t m, int nt, int ng) {
  std::ostringstream s;
  for (int x = 1; x <= nt; ++x) {
    if (x > 1) s << '|';
    auto block = (m >> ((x - 1) * ng)) & ((std::uint64_t{1} << ng) - 1);
    if (!block) s << '-';
    bool first = true;
    for (int y = 1; y <= ng; ++y)
      if (block >> (y - 1) & 1) {
        if (!first) s << ',';
        s << y;
        first = false;
      }
  }
  return s.str();
}

}  // namespace

std::size_t SimplicialComplex::face_count() const {
  std::size_t n = 0;
  for (std::size_t k = 1; k < faces.size(); ++k) n += faces[k].size();
  return n;
}

ChainComplex SimplicialComplex::chains() const {
  ChainComplex c(true);
  std::vector<MaskIndex> index(faces.size());
  for (std::size_t k = 0; k < faces.size(); ++k)
    for (std::uint32_t i = 0; i < faces[k].size(); ++i) index[k].emplace(faces[k][i], i);
  for (std::size_t k = 1; k < faces.size(); ++k) {
    const int d = static_cast<int>(k) - 1;
    c.reserve_degree(d);
    for (std::uint64_t f : faces[k]) {
      SparseColumn col;
      int position = 0;
      for (std::uint64_t rest = f; rest; rest &= rest - 1, ++position) {
        std::uint64_t bit = rest & (~rest + 1);
        col.push_back({index[k - 1].at(f & ~bit), (position % 2 == 0) ? 1 : -1});
      }
      c.add_cell(d, std::move(col));
    }
  }
  return c;
}

std::int64_t SimplicialComplex::reduced_euler() const {
  std::int64_t chi = 0;
  for (std::size_t k = 0; k < faces.size(); ++k) {
    auto n = static_cast<std::int64_t>(faces[k].size());
    chi += (k % 2 == 1) ? n : -n;
  }
  return chi;
}

SimplicialComplex independence_complex(const Graph& g, const BuildLimits& limits) {
  const int n = g.vertex_count();
  if (n > 64) throw InvalidParameter("independence_complex supports at most 64 vertices");
  std::vector<std::uint64_t> nbr(n + 1, 0);
  for (auto [u, v] : g.edges()) {
    nbr[u] |= std::uint64_t{1} << (v - 1);
    nbr[v] |= std::uint64_t{1} << (u - 1);
  }
  SimplicialComplex out;
  out.vertex_count = n;
  out.faces.push_back({0});
  std::size_t total = 0;
  // depth-first: extend by larger vertices only
  struct Frame {
    std::uint64_t set;
    std::uint64_t forbidden;
    int next;
  };
  std::vector<Frame> stack{{0, 0, 1}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next > n) {
      stack.pop_back();
      continue;
    }
    const int v = f.next++;
    const std::uint64_t bit = std::uint64_t{1} << (v - 1);
    if (g.has_loop(v) || (f.forbidden & bit)) continue;
    const std::uint64_t set = f.set | bit;
    const std::uint64_t forbidden = f.forbidden | nbr[v];
    const auto k = static_cast<std::size_t>(popcount(set));
    if (out.faces.size() <= k) out.faces.resize(k + 1);
    out.faces[k].push_back(set);
    enforce_limit(++total, limits, "independence complex");
    stack.push_back({set, forbidden, v + 1});
  }
  return out;
}

SimplicialComplex join_complex(const SimplicialComplex& x, const SimplicialComplex& y) {
  if (x.vertex_count + y.vertex_count > 64) throw InvalidParameter("join_complex supports at most 64 vertices");
  SimplicialComplex out;
  out.vertex_count = x.vertex_count + y.vertex_count;
  out.faces.resize(x.faces.size() + y.faces.size() - 1);
  for (std::size_t a = 0; a < x.faces.size(); ++a)
    for (std::size_t b = 0; b < y.faces.size(); ++b)
      for (std::uint64_t fx : x.faces[a])
        for (std::uint64_t fy : y.faces[b]) out.faces[a + b].push_back(fx | (fy << x.vertex_count));
  while (out.faces.size() > 1 && out.faces.back().empty()) out.faces.pop_back();
  return out;
}

std::size_t HomComplex::count(int degree) const {
  if (degree < 0 || degree >= static_cast<int>(masks->size())) return 0;
  return (*masks)[degree].size();
}

std::uint32_t HomComplex::value(int degree, std::uint32_t index, int x) const {
  const int ng = target.vertex_count();
  return static_cast<std::uint32_t>((mask(degree, index) >> ((x - 1) * ng)) & ((std::uint64_t{1} << ng) - 1));
}

std::string HomComplex::label(std::uint64_t m) const {
  return render_eta(m, source.vertex_count(), target.vertex_count());
}

std::optional<std::uint32_t> HomComplex::find(int degree, std::uint64_t m) const {
  if (degree < 0 || degree >= static_cast<int>(lookup.size())) return std::nullopt;
  auto it = lookup[degree].find(m);
  if (it == lookup[degree].end()) return std::nullopt;
  return it->second;
}

namespace {

HomComplex build_hom(const Graph& t, const Graph& g, bool plus, const BuildLimits& limits) {
  const int nt = t.vertex_count();
  const int ng = g.vertex_count();
  if (nt < 1 || ng < 1) throw InvalidParameter("Hom complexes need nonempty graphs");
  if (ng > 20 || nt * ng > 64) throw InvalidParameter("Hom complexes support |V(T)|·|V(G)| <= 64 and |V(G)| <= 20");
  const std::uint32_t full = (ng == 32) ? 0xffffffffu : ((1u << ng) - 1);
  std::vector<std::uint32_t> common(std::size_t{1} << ng, full);
  for (std::uint32_t a = 1; a <= full; ++a) {
    int y = std::countr_zero(a) + 1;
    common[a] = common[a & (a - 1)] & g.neighbor_mask(y);
  }
  // earlier neighbours of each vertex of T
  std::vector<std::vector<int>> earlier(nt + 1);
  for (auto [u, v] : t.edges())
    if (u != v) earlier[v].push_back(u);

  auto store = std::make_shared<std::vector<std::vector<std::uint64_t>>>();
  std::size_t total = 0;
  std::vector<std::uint32_t> eta(nt + 1, 0);
  // iterative DFS over the vertices of T, values in increasing mask order
  std::vector<std::uint32_t> next(nt + 2, 0);
  int x = 1;
  next[1] = plus ? 0 : 1;
  while (x >= 1) {
    if (next[x] > full) {
      --x;
      continue;
    }
    const std::uint32_t a = next[x]++;
    std::uint32_t allowed = full;
    for (int y : earlier[x]) allowed &= common[eta[y]];
    if (a & ~allowed) continue;
    if (t.has_loop(x) && (a & ~common[a])) continue;
    eta[x] = a;
    if (x < nt) {
      ++x;
      next[x] = plus ? 0 : 1;
      continue;
    }
    std::uint64_t m = 0;
    int size = 0;
    for (int z = 1; z <= nt; ++z) {
      m |= std::uint64_t{eta[z]} << ((z - 1) * ng);
      size += std::popcount(eta[z]);
    }
    if (m == 0) continue;
    const int degree = plus ? size - 1 : size - nt;
    if (static_cast<int>(store->size()) <= degree) store->resize(degree + 1);
    (*store)[degree].push_back(m);
    enforce_limit(++total, limits, plus ? "Hom+ complex" : "Hom complex");
  }

  HomComplex out;
  out.source = t;
  out.target = g;
  out.plus = plus;
  out.masks = store;
  out.lookup.resize(store->size());
  for (std::size_t d = 0; d < store->size(); ++d)
    for (std::uint32_t i = 0; i < (*store)[d].size(); ++i) out.lookup[d].emplace((*store)[d][i], i);

  ChainComplex c(true);
  const std::uint64_t block_mask = (std::uint64_t{1} << ng) - 1;
  for (int d = 0; d < static_cast<int>(store->size()); ++d) {
    c.reserve_degree(d);
    for (std::uint64_t m : (*store)[d]) {
      SparseColumn col;
      if (d == 0) {
        col.push_back({0, 1});
      } else if (plus) {
        int position = 0;
        for (std::uint64_t rest = m; rest; rest &= rest - 1, ++position) {
          std::uint64_t bit = rest & (~rest + 1);
          col.push_back({out.lookup[d - 1].at(m & ~bit), position % 2 == 0 ? 1 : -1});
        }
      } else {
        int before = 0;  // Σ_{j<t} |η(j)|
        for (int tv = 1; tv <= nt; ++tv) {
          const std::uint64_t block = (m >> ((tv - 1) * ng)) & block_mask;
          const int size = std::popcount(block);
          if (size >= 2) {
            const int dd = 1 - tv + before;
            int k = 1;
            for (std::uint64_t rest = block; rest; rest &= rest - 1, ++k) {
              std::uint64_t bit = (rest & (~rest + 1)) << ((tv - 1) * ng);
              const int e = k + dd - 1;
              col.push_back({out.lookup[d - 1].at(m & ~bit), (e % 2 + 2) % 2 == 0 ? 1 : -1});
            }
          }
          before += size;
        }
      }
      c.add_cell(d, std::move(col));
    }
  }
  out.cells.kind = plus ? CellKind::simplicial : CellKind::prodsimplicial;
  out.cells.chain = std::move(c);
  const int tv = nt;
  out.cells.label = [store, tv, ng](int degree, std::uint32_t index) {
    return render_eta((*store)[degree][index], tv, ng);
  };
  return out;
}

}  // namespace

HomComplex hom_complex(const Graph& t, const Graph& g, const BuildLimits& limits) { return build_hom(t, g, false, limits); }

HomComplex hom_plus(const Graph& t, const Graph& g, const BuildLimits& limits) { return build_hom(t, g, true, limits); }

FilteredChainComplex filtration_by_support(const HomComplex& hp) {
  if (!hp.plus) throw InvalidParameter("filtration_by_support needs a Hom+ complex");
  FilteredChainComplex f;
  f.complex = drop_augmentation(hp.cells.chain);
  const int ng = hp.target.vertex_count();
  const std::uint64_t block_mask = (std::uint64_t{1} << ng) - 1;
  for (int d = 0; d <= f.complex.max_degree(); ++d) {
    std::vector<int> lv;
    lv.reserve(hp.count(d));
    for (std::uint32_t i = 0; i < hp.count(d); ++i) {
      const std::uint64_t m = hp.mask(d, i);
      int supp = 0;
      for (int x = 0; x < hp.source.vertex_count(); ++x)
        if ((m >> (x * ng)) & block_mask) ++supp;
      lv.push_back(supp - 1);
    }
    f.level.push_back(std::move(lv));
  }
  return f;
}

std::map<std::pair<int, int>, std::size_t> support_census(const HomComplex& hp) {
  auto f = filtration_by_support(hp);
  std::map<std::pair<int, int>, std::size_t> out;
  for (int d = 0; d <= f.complex.max_degree(); ++d)
    for (int level : f.level[d]) ++out[{level, d}];
  return out;
}

int rho_exponent(const std::vector<std::uint32_t>& eta_values) {
  int c = 0;
  for (std::size_t i = 1; i < eta_values.size(); i += 2) c += std::popcount(eta_values[i]);  // 1-based even i
  return c;
}

RhoReport rho_check(const Graph& t, const Graph& g, const BuildLimits& limits) {
  HomComplex hom = hom_complex(t, g, limits);
  HomComplex plus = hom_plus(t, g, limits);
  const int nt = t.vertex_count();
  const int ng = g.vertex_count();
  const std::uint64_t block_mask = (std::uint64_t{1} << ng) - 1;
  auto c_of = [&](std::uint64_t m) {
    int c = 0;
    for (int x = 2; x <= nt; x += 2) c += std::popcount((m >> ((x - 1) * ng)) & block_mask);
    return c;
  };
  auto full_support = [&](std::uint64_t m) {
    for (int x = 0; x < nt; ++x)
      if (!((m >> (x * ng)) & block_mask)) return false;
    return true;
  };
  RhoReport rep;
  auto coefficient = [](const SparseColumn& col, std::uint32_t row) -> std::int64_t {
    for (const auto& e : col)
      if (e.index == row) return e.value;
    return 0;
  };
  // every Hom incidence, twisted, must equal the Hom+ incidence
  for (int d = 1; d <= hom.cells.chain.max_degree(); ++d) {
    const int pd = d + nt - 1;
    for (std::uint32_t i = 0; i < hom.count(d); ++i) {
      const std::uint64_t m = hom.mask(d, i);
      auto pi = plus.find(pd, m);
      if (!pi) {
        rep.ok = false;
        rep.witness = "Hom cell " + hom.label(m) + " missing from Hom+";
        return rep;
      }
      for (const auto& e : hom.cells.chain.boundary(d, i)) {
        const std::uint64_t fm = hom.mask(d - 1, e.index);
        auto pf = plus.find(pd - 1, fm);
        std::int64_t plus_coef = pf ? coefficient(plus.cells.chain.boundary(pd, *pi), *pf) : 0;
        std::int64_t lhs = ((c_of(fm) % 2) ? -1 : 1) * e.value;
        std::int64_t rhs = ((c_of(m) % 2) ? -1 : 1) * plus_coef;
        ++rep.checked;
        if (lhs != rhs) {
          rep.ok = false;
          rep.witness = hom.label(fm) + " < " + hom.label(m) + ": twisted Hom " + std::to_string(lhs) + ", Hom+ " +
                        std::to_string(rhs);
          return rep;
        }
      }
    }
  }
  // and no full-support Hom+ incidence is left out
  for (int pd = nt; pd <= plus.cells.chain.max_degree(); ++pd) {
    for (std::uint32_t i = 0; i < plus.count(pd); ++i) {
      const std::uint64_t m = plus.mask(pd, i);
      if (!full_support(m)) continue;
      for (const auto& e : plus.cells.chain.boundary(pd, i)) {
        const std::uint64_t fm = plus.mask(pd - 1, e.index);
        if (!full_support(fm)) continue;
        ++rep.checked;
        if (!hom.find(pd - nt + 1, m) || !hom.find(pd - nt, fm)) {
          rep.ok = false;
          rep.witness = "Hom+ incidence " + plus.label(fm) + " < " + plus.label(m) + " has no Hom counterpart";
          return rep;
        }
      }
    }
  }
  return rep;
}

std::vector<BigInt> hom_cycle_cell_census(int m, int n) {
  if (m < 3) throw InvalidParameter("hom_cycle_cell_census needs m >= 3");
  if (n < 1 || n > 12) throw InvalidParameter("hom_cycle_cell_census supports 1 <= n <= 12");
  const std::uint32_t subsets = (1u << n) - 1;
  const int max_dim = m * (n - 1);
  using Poly = std::vector<BigInt>;
  // trace of M^m where M[A][B] = [A ∩ B = ∅] z^(|A|-1), over nonempty A, B
  // Closed walks are grouped by their first subset A; the walk vector is a
  // polynomial per subset.
  std::vector<BigInt> census(max_dim + 1);
  std::vector<Poly> cur(subsets + 1), nxt(subsets + 1);
  for (std::uint32_t start = 1; start <= subsets; ++start) {
    for (auto& p : cur) p.assign(max_dim + 1, 0);
    cur[start][0] = 1;
    for (int step = 0; step < m; ++step) {
      for (auto& p : nxt) p.assign(max_dim + 1, 0);
      for (std::uint32_t a = 1; a <= subsets; ++a) {
        bool any = false;
        for (const auto& v : cur[a])
          if (!v.is_zero()) {
            any = true;
            break;
          }
        if (!any) continue;
        const int shift = std::popcount(a) - 1;
        for (std::uint32_t b = 1; b <= subsets; ++b) {
          if (a & b) continue;
          for (int k = 0; k + shift <= max_dim; ++k)
            if (!cur[a][k].is_zero()) nxt[b][k + shift] += cur[a][k];
        }
      }
      std::swap(cur, nxt);
    }
    for (int k = 0; k <= max_dim; ++k) census[k] += cur[start][k];
  }
  while (!census.empty() && census.back().is_zero()) census.pop_back();
  return census;
}

BigInt reduced_euler_from_census(const std::vector<BigInt>& census) {
  BigInt chi = -1;
  for (std::size_t d = 0; d < census.size(); ++d) chi += (d % 2 == 0) ? census[d] : BigInt(-census[d]);
  return chi;
}

}  // namespace chom
