#include "chom/arcs.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "chom/errors.hpp"
#include "chom/torusfront.hpp"

namespace chom {

std::string to_string(Ring r) { return r == Ring::Z ? "Z" : "Z2"; }
std::string to_string(Parity p) { return p == Parity::odd ? "odd" : "even"; }

namespace {

std::uint64_t bit(int v) { return std::uint64_t{1} << (v - 1); }
bool has(std::uint64_t s, int v) { return (s & bit(v)) != 0; }
int next_vertex(int v, int m) { return v % m + 1; }
int prev_vertex(int v, int m) { return (v + m - 2) % m + 1; }
// vertices 1..k-1
std::uint64_t below(int k) { return k <= 1 ? 0 : (std::uint64_t{1} << (k - 1)) - 1; }
std::uint64_t full(int m) { return m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1; }

// Components of C_m[S] for a proper subset S, as cyclic intervals sorted by start.
std::vector<Arc> components(std::uint64_t s, int m) {
  std::vector<Arc> out;
  for (int v = 1; v <= m; ++v) {
    if (!has(s, v) || has(s, prev_vertex(v, m))) continue;
    int e = v;
    while (has(s, next_vertex(e, m))) e = next_vertex(e, m);
    out.push_back({v, e});
  }
  return out;
}

std::uint64_t arc_mask(const Arc& a, int m) {
  std::uint64_t mask = 0;
  for (int v = a.start;; v = next_vertex(v, m)) {
    mask |= bit(v);
    if (v == a.end) break;
  }
  return mask;
}

int arc_length(const Arc& a, int m) { return (a.end - a.start + m) % m + 1; }

ArcPicture picture_from_support(std::uint64_t s, int m) {
  ArcPicture p;
  p.m = m;
  p.support = s;
  p.arcs = components(s, m);
  return p;
}

std::uint64_t closure(std::uint64_t marked, int m) {
  std::uint64_t out = marked;
  for (int v = 1; v <= m; ++v)
    if (has(marked, v)) out |= bit(prev_vertex(v, m)) | bit(next_vertex(v, m));
  return out;
}

}  // namespace

int ArcPicture::two_gaps() const {
  const int gap_vertices = m - std::popcount(support);
  return gap_vertices - static_cast<int>(arcs.size());
}

std::uint64_t ArcPicture::left_endpoints() const {
  std::uint64_t v = 0;
  for (const auto& a : arcs) v |= bit(a.start);
  return v;
}

std::string ArcPicture::key() const {
  std::string s;
  for (const auto& a : arcs) s += '[' + std::to_string(a.start) + ',' + std::to_string(a.end) + ']';
  return s;
}

std::vector<ArcPicture> enumerate_arc_pictures(int m, int t) {
  if (m < 3 || t < 1) throw InvalidParameter("enumerate_arc_pictures needs m >= 3 and t >= 1");
  if (m > 62) throw UnsupportedParameter("enumerate_arc_pictures supports m <= 62");
  std::vector<ArcPicture> out;
  if (3 * t > m) return out;
  // choose the gaps: t disjoint cyclic intervals of 1 or 2 vertices, arcs in between of >= 2
  std::vector<std::pair<int, int>> gaps;  // (start, size)
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(gaps.size()) == t) {
      std::uint64_t gap_mask = 0;
      for (auto [s, len] : gaps)
        for (int k = 0; k < len; ++k) gap_mask |= bit((s - 1 + k) % m + 1);
      const std::uint64_t s = full(m) & ~gap_mask;
      ArcPicture p = picture_from_support(s, m);
      if (static_cast<int>(p.arcs.size()) != t) return;
      for (const auto& a : p.arcs)
        if (arc_length(a, m) < 2) return;
      // each gap must be a whole component of the complement
      for (auto [gs, len] : gaps) {
        if (has(gap_mask, prev_vertex(gs, m))) return;
        if (has(gap_mask, (gs - 1 + len) % m + 1)) return;
      }
      out.push_back(std::move(p));
      return;
    }
    for (int s = from; s <= m; ++s)
      for (int len = 1; len <= 2; ++len) {
        gaps.push_back({s, len});
        rec(s + 1);
        gaps.pop_back();
      }
  };
  rec(1);
  std::sort(out.begin(), out.end(), [](const ArcPicture& a, const ArcPicture& b) {
    if (a.two_gaps() != b.two_gaps()) return a.two_gaps() < b.two_gaps();
    return a.support < b.support;
  });
  out.erase(std::unique(out.begin(), out.end(), [](const ArcPicture& a, const ArcPicture& b) { return a.support == b.support; }),
            out.end());
  return out;
}

int representative_shift_sign(const ArcPicture& pic, int n, int arc, int from, int to) {
  const int m = pic.m;
  if (arc < 0 || arc >= static_cast<int>(pic.arcs.size())) throw InvalidParameter("representative_shift_sign: no such arc");
  const std::uint64_t a = arc_mask(pic.arcs[arc], m);
  if (from < 1 || from > m || to < 1 || to > m || !has(a, from) || !has(a, to))
    throw InvalidParameter("representative_shift_sign: vertices must lie in the arc");
  if (next_vertex(from, m) != to && prev_vertex(from, m) != to)
    throw InvalidParameter("representative_shift_sign: vertices are not adjacent");
  const bool wrap = (from == 1 && to == m) || (from == m && to == 1);
  if (!wrap) return -1;
  const int b = std::popcount(pic.support & full(m) & ~bit(1) & ~bit(m));
  const long long t = static_cast<long long>(pic.arcs.size());
  const long long e = n * t + static_cast<long long>(n) * b + n + 1;
  return e % 2 ? -1 : 1;
}

ArcComplex build_arc_complex(int m, int n, int t, Ring ring) {
  if (m < 4 || n < 3 || t < 1 || 3 * t > m)
    throw InvalidParameter("build_arc_complex needs m >= 4, n >= 3 and 1 <= t <= m/3");
  ArcComplex out;
  out.m = m;
  out.n = n;
  out.t = t;
  out.ring = ring;
  std::unordered_map<std::uint64_t, std::pair<int, std::uint32_t>> where;
  for (auto& p : enumerate_arc_pictures(m, t)) {
    const int i = p.two_gaps();
    if (static_cast<int>(out.pictures.size()) <= i) out.pictures.resize(i + 1);
    where[p.support] = {i, static_cast<std::uint32_t>(out.pictures[i].size())};
    out.pictures[i].push_back(std::move(p));
  }
  out.chain = ChainComplex(false);
  for (int i = 0; i < static_cast<int>(out.pictures.size()); ++i) {
    out.chain.reserve_degree(i);
    for (const auto& p : out.pictures[i]) {
      SparseColumn col;
      const std::uint64_t s = p.support;
      const std::uint64_t v = p.left_endpoints();
      for (int w = 1; w <= m && i > 0; ++w) {
        if (has(s, w)) continue;
        const bool left = has(s, prev_vertex(w, m));
        const bool right = has(s, next_vertex(w, m));
        if (left && right) continue;  // would unite two arcs
        const int sgn = std::popcount(s & below(w)) + n * std::popcount(v & below(w));
        std::int64_t coef = sgn % 2 ? -1 : 1;
        const std::uint64_t s2 = s | bit(w);
        const ArcPicture target = picture_from_support(s2, m);
        if (right) {
          // the arc now starts at w: move its representative from w+1 to w
          const int from = next_vertex(w, m);
          int arc = 0;
          while (!has(arc_mask(target.arcs[arc], m), w)) ++arc;
          coef *= representative_shift_sign(target, n, arc, from, w);
        }
        auto it = where.find(s2);
        if (it == where.end() || it->second.first != i - 1) throw ContractViolation("arc complex face missing: " + target.key());
        if (ring == Ring::Z2) coef = 1;
        col.push_back({it->second.second, coef});
      }
      out.chain.add_cell(i, std::move(col));
    }
  }
  if (ring == Ring::Z) out.chain.check_square_zero();
  return out;
}

ArcIsoReport arc_phi_isomorphism(int m, int t) {
  ArcComplex a = build_arc_complex(m, 3, t, Ring::Z2);
  PhiComplex phi = build_phi(t, m, 3);
  ArcIsoReport rep;
  std::vector<std::map<std::string, std::uint32_t>> phi_index(phi.tokens.size());
  for (std::size_t d = 0; d < phi.tokens.size(); ++d)
    for (std::uint32_t i = 0; i < phi.tokens[d].size(); ++i) phi_index[d][phi.key(static_cast<int>(d), i)] = i;
  auto gap_key = [&](const ArcPicture& p) {
    std::vector<PhiToken> tokens;
    for (const auto& arc : p.arcs) {
      const int g = next_vertex(arc.end, m);
      tokens.push_back({g, !has(p.support, next_vertex(g, m))});
    }
    std::sort(tokens.begin(), tokens.end(), [](const PhiToken& x, const PhiToken& y) { return x.start < y.start; });
    PhiComplex tmp;
    tmp.m = t;
    tmp.n = m;
    tmp.tokens = {{tokens}};
    return tmp.key(0, 0);
  };
  const std::size_t top = std::max(a.pictures.size(), phi.tokens.size());
  for (std::size_t d = 0; d < top; ++d) {
    const std::size_t na = d < a.pictures.size() ? a.pictures[d].size() : 0;
    const std::size_t np = d < phi.tokens.size() ? phi.tokens[d].size() : 0;
    if (na != np) {
      rep.ok = false;
      rep.detail = "degree " + std::to_string(d) + ": " + std::to_string(na) + " pictures vs " + std::to_string(np) + " cubes";
      return rep;
    }
    std::set<std::uint32_t> used;
    for (std::uint32_t i = 0; i < na; ++i) {
      const ArcPicture& p = a.pictures[d][i];
      auto it = phi_index[d].find(gap_key(p));
      if (it == phi_index[d].end() || !used.insert(it->second).second) {
        rep.ok = false;
        rep.detail = "picture " + p.key() + " has no distinct cube";
        return rep;
      }
      if (d == 0) continue;
      std::set<std::uint32_t> faces_a, faces_p;
      for (const auto& e : a.chain.boundary(static_cast<int>(d), i)) {
        auto f = phi_index[d - 1].find(gap_key(a.pictures[d - 1][e.index]));
        faces_a.insert(f == phi_index[d - 1].end() ? 0xffffffffu : f->second);
      }
      for (const auto& e : phi.cells.chain.boundary(static_cast<int>(d), it->second))
        if (e.value % 2) faces_p.insert(e.index);
      if (faces_a != faces_p) {
        rep.ok = false;
        rep.detail = "boundary of " + p.key() + " differs from " + phi.key(static_cast<int>(d), it->second);
        return rep;
      }
    }
    rep.cells += na;
  }
  return rep;
}

Parity alpha_parity(int m, int n, int t) {
  if (m < 4 || n < 3 || t < 1 || 3 * t >= m) throw InvalidParameter("alpha_parity needs m >= 4, n >= 3 and 1 <= t < m/3");
  return ((m + t + 1) * (n + 1)) % 2 ? Parity::odd : Parity::even;
}

AlphaComputation alpha_from_complex(int m, int n, int t) {
  alpha_parity(m, n, t);  // parameter check
  ArcComplex a = build_arc_complex(m, n, t, Ring::Z);
  FrontComplex tf = build_front_complex(t, m - t, 3);
  GrindResult gr = grind(tf);

  // front cell key -> arc cell
  std::unordered_map<std::string, CellRef> arc_of;
  for (int i = 0; i < static_cast<int>(a.pictures.size()); ++i)
    for (std::uint32_t j = 0; j < a.pictures[i].size(); ++j) {
      const ArcPicture& p = a.pictures[i][j];
      std::vector<PhiToken> tokens;
      for (const auto& arc : p.arcs) {
        const int g = next_vertex(arc.end, m);
        tokens.push_back({g, !has(p.support, next_vertex(g, m))});
      }
      std::sort(tokens.begin(), tokens.end(), [](const PhiToken& x, const PhiToken& y) { return x.start < y.start; });
      arc_of[key(phi_cell_to_flip(tokens, m))] = {i, j};
    }
  auto lookup = [&](const Flip& f) {
    auto it = arc_of.find(key(f));
    if (it == arc_of.end()) throw ContractViolation("front cell " + key(f) + " has no arc picture");
    return it->second;
  };
  auto coefficient = [&](CellRef lower, CellRef upper) -> std::int64_t {
    for (const auto& e : a.chain.boundary(upper.degree, upper.index))
      if (e.index == lower.index) return e.value;
    throw ContractViolation("matched arc cells are not incident");
  };

  MorseMatching matching;
  std::set<CellRef> used;
  for (const auto& pr : gr.matching.pairs) {
    CellRef lo = lookup(tf.flips[pr.lower.degree][pr.lower.index]);
    CellRef up = lookup(tf.flips[pr.upper.degree][pr.upper.index]);
    matching.pairs.push_back({lo, up, coefficient(lo, up)});
    used.insert(lo);
    used.insert(up);
  }

  // keep one monotone path through each maximal thin cube
  const FrontComplex& thin = gr.thin;
  std::set<CellRef> keep;
  std::vector<std::vector<std::uint8_t>> has_coface(thin.flips.size());
  for (std::size_t d = 0; d < thin.flips.size(); ++d) has_coface[d].assign(thin.flips[d].size(), 0);
  for (int d = 1; d < static_cast<int>(thin.flips.size()); ++d)
    for (std::uint32_t i = 0; i < thin.flips[d].size(); ++i)
      for (const auto& e : thin.cells.chain.boundary(d, i)) has_coface[d - 1][e.index] = 1;
  for (int d = 0; d < static_cast<int>(thin.flips.size()); ++d)
    for (std::uint32_t i = 0; i < thin.flips[d].size(); ++i) {
      if (has_coface[d][i]) continue;
      const Flip& f = thin.flips[d][i];
      TorusFront cur = f.base;
      keep.insert(lookup({cur, {}}));
      for (int pos : f.positions) {
        keep.insert(lookup({cur, {pos}}));
        cur = flip_corner(cur, pos, 1);
        keep.insert(lookup({cur, {}}));
      }
    }

  // greedy elementary collapses of the thin cells onto the kept paths
  std::set<CellRef> alive;
  for (int d = 0; d < static_cast<int>(thin.flips.size()); ++d)
    for (const auto& f : thin.flips[d]) alive.insert(lookup(f));
  std::map<CellRef, std::vector<CellRef>> cofaces;
  for (const CellRef& c : alive) {
    if (c.degree == 0) continue;
    for (const auto& e : a.chain.boundary(c.degree, c.index)) cofaces[{c.degree - 1, e.index}].push_back(c);
  }
  bool progress = true;
  while (progress) {
    progress = false;
    for (auto it = alive.begin(); it != alive.end(); ++it) {
      const CellRef c = *it;
      if (keep.count(c)) continue;
      CellRef only{};
      int count = 0;
      for (const CellRef& u : cofaces[c])
        if (alive.count(u)) {
          only = u;
          ++count;
        }
      if (count != 1 || keep.count(only)) continue;
      matching.pairs.push_back({c, only, coefficient(c, only)});
      alive.erase(only);
      alive.erase(c);
      progress = true;
      break;
    }
  }
  if (alive != keep) throw ContractViolation("thin cubes do not collapse onto their paths");
  if (!verify_acyclic(a.chain, matching).acyclic) throw ContractViolation("combined arc matching is not acyclic");

  MorseReduction red = morse_reduce(a.chain, matching);
  AlphaComputation out;
  const ChainComplex& q = red.complex;
  if (q.max_degree() > 1) {
    for (int d = 2; d <= q.max_degree(); ++d)
      if (q.size(d)) throw ContractViolation("reduced arc complex has cells above degree 1");
  }
  out.vertices = q.size(0);
  out.edges = q.max_degree() >= 1 ? q.size(1) : 0;
  for (std::uint32_t j = 0; j < out.edges; ++j) {
    const auto& col = q.boundary(1, j);
    if (col.size() != 2 || std::abs(col[0].value) != 1 || std::abs(col[1].value) != 1)
      throw ContractViolation("reduced edge " + std::to_string(j) + " is not a path edge");
    if (col[0].value == col[1].value) ++out.alpha;
  }
  return out;
}

RowComplex build_row_complex(int m, int t) {
  if (m < 4 || m > 20 || t < 1) throw InvalidParameter("build_row_complex needs 4 <= m <= 20 and t >= 1");
  RowComplex out;
  out.m = m;
  out.t = t;
  out.cells.resize(m);
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint32_t> index;
  for (std::uint64_t s = 0; s < full(m); ++s) {
    auto comps = components(s, m);
    std::vector<std::uint64_t> arcs;
    for (const auto& c : comps)
      if (arc_length(c, m) >= 2) arcs.push_back(arc_mask(c, m));
    if (static_cast<int>(arcs.size()) < t) continue;
    const int c = m - 1 - std::popcount(s);
    const std::uint32_t subsets = 1u << arcs.size();
    for (std::uint32_t sel = 0; sel < subsets; ++sel) {
      if (std::popcount(sel) != t) continue;
      std::uint64_t marked = 0;
      for (std::size_t k = 0; k < arcs.size(); ++k)
        if (sel >> k & 1) marked |= arcs[k];
      index[{s, marked}] = static_cast<std::uint32_t>(out.cells[c].size());
      out.cells[c].push_back({s, marked});
    }
  }
  while (!out.cells.empty() && out.cells.back().empty()) out.cells.pop_back();
  out.chain = ChainComplex(false);
  for (int c = 0; c < static_cast<int>(out.cells.size()); ++c) {
    out.chain.reserve_degree(c);
    for (auto [s, marked] : out.cells[c]) {
      SparseColumn col;
      for (int w = 1; w <= m && c > 0; ++w) {
        if (has(s, w)) continue;
        const std::uint64_t s2 = s | bit(w);
        std::uint64_t comp = 0;
        for (const auto& a : components(s2, m))
          if (has(arc_mask(a, m), w)) comp = arc_mask(a, m);
        const std::uint64_t touched = comp & marked;
        // does w join two marked arcs?
        const bool l = has(marked, prev_vertex(w, m));
        const bool r = has(marked, next_vertex(w, m));
        if (l && r) continue;
        const std::uint64_t marked2 = touched ? (marked | comp) : marked;
        auto it = index.find({s2, marked2});
        if (it == index.end()) throw ContractViolation("row complex face missing");
        col.push_back({it->second, 1});
      }
      out.chain.add_cell(c, std::move(col));
    }
  }
  return out;
}

MorseMatching row_matching(const RowComplex& row) {
  const int m = row.m;
  std::map<std::pair<std::uint64_t, std::uint64_t>, CellRef> where;
  for (int c = 0; c < static_cast<int>(row.cells.size()); ++c)
    for (std::uint32_t i = 0; i < row.cells[c].size(); ++i) where[row.cells[c][i]] = {c, i};
  MorseMatching out;
  for (int c = 0; c < static_cast<int>(row.cells.size()); ++c)
    for (std::uint32_t i = 0; i < row.cells[c].size(); ++i) {
      auto [s, marked] = row.cells[c][i];
      const std::uint64_t hat = closure(marked, m);
      if (hat == full(m)) continue;
      const int x = std::countr_one(hat) + 1;
      if (has(s, x)) continue;  // paired from the other side
      auto it = where.find({s | bit(x), marked});
      if (it == where.end()) throw ContractViolation("row matching partner missing");
      out.pairs.push_back({it->second, {c, i}, 1});
    }
  return out;
}

std::string E2Table::group(int p, int q) const {
  for (const auto& e : entries)
    if (e.p == p && e.q == q) return e.group;
  return "0";
}

E2Table e2_table(int m, int n, Ring ring) {
  if (m < 5 || n < 4) throw InvalidParameter("e2_table needs m >= 5 and n >= 4");
  E2Table out;
  out.m = m;
  out.n = n;
  out.ring = ring;
  const bool z = ring == Ring::Z;
  const std::string one = z ? "Z" : "Z2";
  auto add = [&](int p, int q, std::string g) { out.entries.push_back({p, q, std::move(g)}); };
  add(0, 0, one);
  if (z) {
    add(m - 3, n - 2, (m * (n + 1)) % 2 == 0 ? "Z" : "0");
  } else {
    add(m - 3, n - 2, "Z2");
  }
  add(m - 2, n - 2, "0");
  for (int t = 2; t <= (m - 1) / 3; ++t) {
    const int q = t * (n - 2);
    if (!z) {
      add(m - t - 2, q, "Z2");
      add(m - t - 1, q, "Z2");
    } else if (n % 2 == 1 || (m + t) % 2 == 1) {
      add(m - t - 2, q, "Z");
      add(m - t - 1, q, "Z");
    } else {
      add(m - t - 2, q, "0");
      add(m - t - 1, q, "Z2");
    }
  }
  if (m % 3 == 0) {
    const int q = m * (n - 2) / 3;
    add(2 * m / 3 - 2, q, "0");
    add(2 * m / 3 - 1, q, z ? "Z^3" : "Z2^3");
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const E2Entry& a, const E2Entry& b) { return std::pair{a.p, a.q} < std::pair{b.p, b.q}; });
  return out;
}

nlohmann::json to_json(const E2Table& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : t.entries) entries.push_back({{"p", e.p}, {"q", e.q}, {"group", e.group}});
  return {{"m", t.m}, {"n", t.n}, {"ring", to_string(t.ring)}, {"entries", entries}};
}

namespace {

std::string group_name(std::size_t betti, const std::vector<std::int64_t>& torsion, bool z2) {
  std::string s;
  auto append = [&](const std::string& part) { s += (s.empty() ? "" : "+") + part; };
  if (betti == 1) append(z2 ? "Z2" : "Z");
  if (betti > 1) append((z2 ? "Z2^" : "Z^") + std::to_string(betti));
  for (auto t : torsion) append("Z" + std::to_string(t));
  return s.empty() ? "0" : s;
}

}  // namespace

std::vector<E2Entry> arc_e2_entries(const ArcComplex& a) {
  std::vector<E2Entry> out;
  const int q = a.t * (a.n - 2);
  const int top = a.chain.max_degree();
  if (a.ring == Ring::Z) {
    HomologyResult h = homology_integer(a.chain);
    for (int i = 0; i <= top; ++i) out.push_back({a.cochain_degree(i), q, group_name(h.betti(i), h.torsion(i), false)});
  } else {
    BettiNumbers b = homology_mod_p(a.chain, 2);
    for (int i = 0; i <= top; ++i) out.push_back({a.cochain_degree(i), q, group_name(b.at(i), {}, true)});
  }
  std::sort(out.begin(), out.end(), [](const E2Entry& x, const E2Entry& y) { return x.p < y.p; });
  return out;
}

}  // namespace chom
