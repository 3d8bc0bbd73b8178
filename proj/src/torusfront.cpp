#include "chom/torusfront.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <tuple>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "chom/errors.hpp"
#include "chom/homspaces.hpp"

namespace chom {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

// forward steps from x to y on the circular n-set, in 1..n (x == y gives n)
int forward(int x, int y, int n) { return mod(y - x - 1, n) + 1; }

int token_last(const PhiToken& t, int n) { return t.pair ? t.start % n + 1 : t.start; }

std::string token_key(const std::vector<PhiToken>& ts, int n) {
  std::string s;
  for (const auto& t : ts) {
    s += '{' + std::to_string(t.start);
    if (t.pair) s += ',' + std::to_string(token_last(t, n));
    s += '}';
  }
  return s;
}

bool phi_valid(const std::vector<PhiToken>& ts, int n, int g) {
  const int m = static_cast<int>(ts.size());
  int total = 0;
  for (int j = 0; j < m; ++j) {
    const auto& a = ts[j];
    const auto& b = ts[(j + 1) % m];
    const int gap = forward(token_last(a, n), b.start, n);
    if (gap < g) return false;
    total += (a.pair ? 1 : 0) + gap;
  }
  return total == n;
}

}  // namespace

std::string PhiComplex::key(int degree, std::uint32_t index) const {
  if (m == 0) return "{}";
  return token_key(tokens[degree][index], n);
}

PhiComplex build_phi(int m, int n, int g) {
  if (n < 1) throw InvalidParameter("build_phi needs n >= 1");
  if (m < 0 || g < 0) throw InvalidParameter("build_phi needs m, g >= 0");
  PhiComplex out;
  out.m = m;
  out.n = n;
  out.g = g;
  out.cells.kind = CellKind::cubical;
  out.cells.chain = ChainComplex(true);
  if (m == 0) {
    out.tokens = {{{}}};
    out.cells.chain.add_cell(0, {{0, 1}});
    out.cells.label = [](int, std::uint32_t) { return std::string("{}"); };
    return out;
  }
  std::vector<PhiToken> all;
  for (int a = 1; a <= n; ++a) {
    all.push_back({a, false});
    if (n >= 3 || (n == 2 && a == 1)) all.push_back({a, true});
  }
  std::vector<std::vector<PhiToken>> cells;
  std::vector<PhiToken> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (static_cast<int>(cur.size()) == m) {
      if (phi_valid(cur, n, g)) cells.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < all.size(); ++i) {
      if (!cur.empty() && all[i].start <= cur.back().start) continue;
      cur.push_back(all[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  std::map<std::string, std::uint32_t> index_by_key;
  std::vector<std::map<std::string, std::uint32_t>> index;
  for (const auto& c : cells) {
    int d = static_cast<int>(std::count_if(c.begin(), c.end(), [](const PhiToken& t) { return t.pair; }));
    if (static_cast<int>(out.tokens.size()) <= d) {
      out.tokens.resize(d + 1);
      index.resize(d + 1);
    }
    index[d].emplace(token_key(c, n), static_cast<std::uint32_t>(out.tokens[d].size()));
    out.tokens[d].push_back(c);
  }
  for (int d = 0; d < static_cast<int>(out.tokens.size()); ++d) {
    out.cells.chain.reserve_degree(d);
    for (const auto& c : out.tokens[d]) {
      SparseColumn col;
      if (d == 0) {
        col.push_back({0, 1});
      } else {
        int k = 0;
        for (std::size_t j = 0; j < c.size(); ++j) {
          if (!c[j].pair) continue;
          const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
          for (int upper = 0; upper < 2; ++upper) {
            auto face = c;
            face[j] = {upper ? token_last(c[j], n) : c[j].start, false};
            std::sort(face.begin(), face.end(), [](const PhiToken& a, const PhiToken& b) { return a.start < b.start; });
            auto it = index[d - 1].find(token_key(face, n));
            if (it == index[d - 1].end()) throw ContractViolation("Φ face missing: " + token_key(face, n));
            col.push_back({it->second, upper ? sign : -sign});
          }
          ++k;
        }
      }
      out.cells.chain.add_cell(d, std::move(col));
    }
  }
  auto toks = std::make_shared<std::vector<std::vector<std::vector<PhiToken>>>>(out.tokens);
  out.cells.label = [toks, n](int d, std::uint32_t i) { return token_key((*toks)[d][i], n); };
  return out;
}

// ---- fronts ----------------------------------------------------------------

std::string key(const Flip& f) {
  std::string s = "o" + std::to_string(f.base.offset) + ":" + f.base.word + ":";
  for (std::size_t i = 0; i < f.positions.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(f.positions[i]);
  }
  return s;
}

bool satisfies_gap(const std::string& word, int gap) {
  const int len = static_cast<int>(word.size());
  const int first = static_cast<int>(word.find('N'));
  if (first < 0) return true;
  int run = 0;
  for (int k = 1; k <= len; ++k) {
    if (word[(first + k) % len] == 'N') {
      if (run < gap - 1) return false;
      run = 0;
    } else {
      ++run;
    }
  }
  return true;
}

bool is_nw_corner(const TorusFront& t, int i) {
  const int len = static_cast<int>(t.word.size());
  return t.word[mod(i - 1, len)] == 'N' && t.word[i] == 'E';
}

bool is_se_corner(const TorusFront& t, int i) {
  const int len = static_cast<int>(t.word.size());
  return t.word[mod(i - 1, len)] == 'E' && t.word[i] == 'N';
}

TorusFront flip_corner(const TorusFront& t, int i, int band) {
  const int len = static_cast<int>(t.word.size());
  const bool nw = is_nw_corner(t, i);
  if (!nw && !is_se_corner(t, i)) throw InvalidParameter("flip_corner: vertex " + std::to_string(i) + " is not a sharp corner");
  TorusFront out = t;
  std::swap(out.word[mod(i - 1, len)], out.word[i]);
  // the start vertex moves by (1,-1) or (-1,1)
  if (i == 0) out.offset = mod(t.offset + (nw ? -1 : 1), band);
  return out;
}

TorusFront member(const Flip& f, std::uint32_t choice, int band) {
  TorusFront t = f.base;
  for (std::size_t k = 0; k < f.positions.size(); ++k)
    if (choice >> k & 1) t = flip_corner(t, f.positions[k], band);
  return t;
}

std::optional<std::uint32_t> FrontComplex::find(const Flip& f) const {
  auto it = index.find(key(f));
  if (it == index.end()) return std::nullopt;
  if (static_cast<int>(flips.size()) <= f.dimension() || flips[f.dimension()][it->second] != f) return std::nullopt;
  return it->second;
}

namespace {

bool cell_less(const Flip& a, const Flip& b) {
  if (a.base.offset != b.base.offset) return a.base.offset < b.base.offset;
  if (a.base.word != b.base.word) return a.base.word < b.base.word;
  return a.positions < b.positions;
}

int cyclic_distance(int i, int j, int len) {
  int d = std::abs(i - j);
  return std::min(d, len - d);
}

void fill_chain(FrontComplex& out) {
  out.index.clear();
  for (auto& dim : out.flips) std::sort(dim.begin(), dim.end(), cell_less);
  for (std::size_t d = 0; d < out.flips.size(); ++d)
    for (std::uint32_t i = 0; i < out.flips[d].size(); ++i) out.index.emplace(key(out.flips[d][i]), i);
  out.cells.kind = CellKind::cubical;
  out.cells.chain = ChainComplex(true);
  const int band = out.params.band;
  for (int d = 0; d < static_cast<int>(out.flips.size()); ++d) {
    out.cells.chain.reserve_degree(d);
    for (const auto& f : out.flips[d]) {
      SparseColumn col;
      if (d == 0) {
        col.push_back({0, 1});
      } else {
        for (int k = 0; k < d; ++k) {
          const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
          Flip lower{f.base, f.positions};
          lower.positions.erase(lower.positions.begin() + k);
          Flip upper{flip_corner(f.base, f.positions[k], band), lower.positions};
          auto lo = out.find(lower);
          auto up = out.find(upper);
          if (!lo || !up) throw ContractViolation("front complex is missing a face of " + key(f));
          col.push_back({*up, sign});
          col.push_back({*lo, -sign});
        }
      }
      out.cells.chain.add_cell(d, std::move(col));
    }
  }
  auto store = std::make_shared<std::vector<std::vector<Flip>>>(out.flips);
  out.cells.label = [store](int d, std::uint32_t i) { return key((*store)[d][i]); };
}

}  // namespace

FrontComplex build_band_front_complex(const FrontParams& p) {
  if (p.north < 0 || p.east < 0 || p.length() < 1) throw InvalidParameter("front complex needs north, east >= 0 and a positive length");
  if (p.band < 1) throw InvalidParameter("front complex needs band >= 1");
  if (p.gap < 0) throw InvalidParameter("front complex needs gap >= 0");
  const int len = p.length();
  FrontComplex out;
  out.params = p;
  std::vector<std::string> words;
  std::string w(len, 'E');
  std::fill(w.begin(), w.begin() + p.north, 'N');
  std::sort(w.begin(), w.end());
  do {
    if (satisfies_gap(w, p.gap)) words.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  out.flips.emplace_back();
  for (int o = 0; o < p.band; ++o)
    for (const auto& word : words) out.flips[0].push_back({{o, word}, {}});
  // every flip is generated from its all-northwestern member
  for (std::size_t v = 0; v < out.flips[0].size(); ++v) {
    const TorusFront base = out.flips[0][v].base;
    std::vector<int> corners;
    for (int i = 0; i < len; ++i)
      if (is_nw_corner(base, i)) corners.push_back(i);
    const std::uint32_t subsets = 1u << corners.size();
    for (std::uint32_t s = 1; s < subsets; ++s) {
      Flip f{base, {}};
      for (std::size_t k = 0; k < corners.size(); ++k)
        if (s >> k & 1) f.positions.push_back(corners[k]);
      bool ok = true;
      for (std::size_t a = 0; a < f.positions.size() && ok; ++a)
        for (std::size_t b = a + 1; b < f.positions.size() && ok; ++b)
          if (cyclic_distance(f.positions[a], f.positions[b], len) < 2) ok = false;
      if (!ok) continue;
      const std::uint32_t members = 1u << f.positions.size();
      for (std::uint32_t c = 1; c < members && ok; ++c)
        if (!satisfies_gap(member(f, c, p.band).word, p.gap)) ok = false;
      if (!ok) continue;
      const int d = f.dimension();
      if (static_cast<int>(out.flips.size()) <= d) out.flips.resize(d + 1);
      out.flips[d].push_back(std::move(f));
    }
  }
  fill_chain(out);
  return out;
}

FrontComplex build_front_complex(int north, int east, int gap) { return build_band_front_complex({north, east, gap, 1}); }

// ---- dictionary --------------------------------------------------------------

Flip phi_cell_to_flip(const std::vector<PhiToken>& tokens, int n) {
  std::string word(n, 'E');
  Flip f;
  for (const auto& t : tokens) {
    word[t.start - 1] = 'N';  // northwestern member keeps the first element of a pair
    if (t.pair) f.positions.push_back(t.start % n);
  }
  std::sort(f.positions.begin(), f.positions.end());
  f.base = {0, word};
  return f;
}

DictionaryReport phi_front_dictionary(int m, int n, int g) {
  if (n < 3 || m < 1 || (m == 1 && n == g)) throw InvalidParameter("the Φ/front dictionary needs n >= 3, m >= 1 and not (m = 1, n = g)");
  if (m > n) throw InvalidParameter("phi_front_dictionary needs m <= n");
  PhiComplex phi = build_phi(m, n, g);
  FrontComplex tf = build_front_complex(m, n - m, g);
  DictionaryReport rep;
  const int top = std::max(phi.cells.chain.max_degree(), tf.cells.chain.max_degree());
  for (int d = 0; d <= top; ++d) {
    if (phi.cells.chain.size(d) != tf.cells.chain.size(d)) {
      rep.ok = false;
      rep.detail = "degree " + std::to_string(d) + ": " + std::to_string(phi.cells.chain.size(d)) + " Φ cells vs " +
                   std::to_string(tf.cells.chain.size(d)) + " front cells";
      return rep;
    }
    std::vector<std::uint32_t> image(phi.cells.chain.size(d));
    for (std::uint32_t i = 0; i < phi.cells.chain.size(d); ++i) {
      auto j = tf.find(phi_cell_to_flip(phi.tokens[d][i], n));
      if (!j) {
        rep.ok = false;
        rep.detail = "no front cell for " + phi.key(d, i);
        return rep;
      }
      image[i] = *j;
    }
    std::vector<std::uint32_t> sorted = image;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      rep.ok = false;
      rep.detail = "dictionary is not injective in degree " + std::to_string(d);
      return rep;
    }
    if (d == 0) {
      rep.cells += image.size();
      continue;
    }
    for (std::uint32_t i = 0; i < image.size(); ++i) {
      std::vector<std::pair<std::uint32_t, std::int64_t>> a, b;
      for (const auto& e : phi.cells.chain.boundary(d, i)) {
        auto face = tf.find(phi_cell_to_flip(phi.tokens[d - 1][e.index], n));
        a.push_back({face ? *face : 0xffffffffu, std::abs(e.value)});
      }
      for (const auto& e : tf.cells.chain.boundary(d, image[i])) b.push_back({e.index, std::abs(e.value)});
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) {
        rep.ok = false;
        rep.detail = "boundary of " + phi.key(d, i) + " does not match " + key(tf.flips[d][image[i]]);
        return rep;
      }
    }
    rep.cells += image.size();
  }
  return rep;
}

// ---- width -------------------------------------------------------------------

std::vector<std::int64_t> level_values(const TorusFront& t, const FrontParams& p) {
  std::vector<std::int64_t> c;
  std::int64_t x = -t.offset, y = t.offset;
  for (char s : t.word) {
    c.push_back(std::int64_t{p.north} * x - std::int64_t{p.east} * y);
    if (s == 'N') {
      ++y;
    } else {
      ++x;
    }
  }
  return c;
}

WidthClass classify(std::int64_t spread, const FrontParams& p) {
  if (spread < p.length()) return WidthClass::very_thin;
  if (spread == p.length()) return WidthClass::thin;
  return WidthClass::wide;
}

std::string to_string(WidthClass k) {
  switch (k) {
    case WidthClass::very_thin:
      return "very_thin";
    case WidthClass::thin:
      return "thin";
    case WidthClass::wide:
      break;
  }
  return "wide";
}

Width width_spread(const TorusFront& t, const FrontParams& p) {
  auto c = level_values(t, p);
  auto [lo, hi] = std::minmax_element(c.begin(), c.end());
  std::int64_t spread = *hi - *lo;
  return {spread, classify(spread, p)};
}

Width width_spread(const Flip& f, const FrontParams& p) {
  // member values differ from the base only at flipped vertices, by +L
  auto c = level_values(f.base, p);
  const std::int64_t len = p.length();
  std::int64_t best = 0;
  const std::uint32_t members = 1u << f.positions.size();
  for (std::uint32_t choice = 0; choice < members; ++choice) {
    auto v = c;
    for (std::size_t k = 0; k < f.positions.size(); ++k)
      if (choice >> k & 1) v[f.positions[k]] += len;
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    best = std::max(best, *hi - *lo);
  }
  return {best, classify(best, p)};
}

ExtremeCorners extreme_corners(const Flip& f, const FrontParams& p) {
  auto low = level_values(f.base, p);
  auto high = low;
  for (int pos : f.positions) high[pos] += p.length();
  const std::int64_t gmin = *std::min_element(low.begin(), low.end());
  const std::int64_t gmax = *std::max_element(high.begin(), high.end());
  ExtremeCorners out;
  if (p.north == 0 || p.east == 0) return out;
  for (int i = 0; i < static_cast<int>(low.size()); ++i) {
    if (low[i] == gmin) out.northwest.push_back(i);
    if (high[i] == gmax) out.southeast.push_back(i);
  }
  return out;
}

ExtremeCorners extreme_corners(const TorusFront& t, const FrontParams& p) { return extreme_corners(Flip{t, {}}, p); }

// ---- grinding ----------------------------------------------------------------

namespace {

FrontComplex restrict_complex(const FrontComplex& c, const std::vector<std::vector<std::uint8_t>>& keep) {
  FrontComplex out;
  out.params = c.params;
  for (std::size_t d = 0; d < c.flips.size(); ++d) {
    std::vector<Flip> kept;
    for (std::size_t i = 0; i < c.flips[d].size(); ++i)
      if (keep[d][i]) kept.push_back(c.flips[d][i]);
    if (kept.empty()) break;
    out.flips.push_back(std::move(kept));
  }
  fill_chain(out);
  return out;
}

struct Partner {
  Flip cell;
  bool is_upper;  // the partner is the larger cell
};

}  // namespace

GrindResult grind(const FrontComplex& c) {
  const FrontParams& p = c.params;
  const std::int64_t len = p.length();
  const int band = p.band;
  GrindResult out;
  std::vector<std::vector<std::uint8_t>> thin(c.flips.size());
  struct Interval {
    std::int64_t spread;
    int dim;
    std::string up;
    std::string down;
  };
  std::map<std::string, Interval> intervals;
  std::size_t wide = 0;
  for (int d = 0; d < static_cast<int>(c.flips.size()); ++d) {
    thin[d].assign(c.flips[d].size(), 0);
    for (std::uint32_t i = 0; i < c.flips[d].size(); ++i) {
      const Flip& f = c.flips[d][i];
      const Width w = width_spread(f, p);
      if (w.spread <= len) {
        thin[d][i] = 1;
        continue;
      }
      ++wide;
      const ExtremeCorners ex = extreme_corners(f, p);
      std::set<int> nw(ex.northwest.begin(), ex.northwest.end());
      std::set<int> se(ex.southeast.begin(), ex.southeast.end());
      std::set<int> all = nw;
      all.insert(se.begin(), se.end());
      if (all.empty() || all.size() != nw.size() + se.size())
        throw ContractViolation("wide cell " + key(f) + " has no well-defined extreme corners");
      // σ↑: flip every extreme corner; σ↓: drop them, keeping the extreme choice
      Flip up = f, down = f;
      for (int e : all) {
        const bool flipped = std::binary_search(f.positions.begin(), f.positions.end(), e);
        if (!flipped) {
          if (se.count(e)) up.base = flip_corner(up.base, e, band);
          up.positions.push_back(e);
        } else {
          if (se.count(e)) down.base = flip_corner(down.base, e, band);
          down.positions.erase(std::find(down.positions.begin(), down.positions.end(), e));
        }
      }
      std::sort(up.positions.begin(), up.positions.end());
      auto ui = c.find(up);
      auto di = c.find(down);
      if (!ui || !di) throw ContractViolation("grinding interval of " + key(f) + " leaves the complex");
      intervals.try_emplace(key(up), Interval{w.spread, up.dimension(), key(up), key(down)});

      // matching toggles the smallest extreme corner
      const int e = *all.begin();
      if (std::binary_search(f.positions.begin(), f.positions.end(), e)) continue;  // paired from below
      Flip partner = f;
      if (se.count(e)) partner.base = flip_corner(partner.base, e, band);
      partner.positions.push_back(e);
      std::sort(partner.positions.begin(), partner.positions.end());
      auto pi = c.find(partner);
      if (!pi) throw ContractViolation("grinding partner " + key(partner) + " of " + key(f) + " is missing");
      std::int64_t coef = 0;
      for (const auto& entry : c.cells.chain.boundary(d + 1, *pi))
        if (entry.index == i) coef = entry.value;
      if (coef == 0) throw ContractViolation("grinding partner " + key(partner) + " does not contain " + key(f));
      out.matching.pairs.push_back({{d, i}, {d + 1, *pi}, coef});
    }
  }
  if (out.matching.pairs.size() * 2 != wide)
    throw ContractViolation("grinding matched " + std::to_string(out.matching.pairs.size() * 2) + " of " +
                            std::to_string(wide) + " wide cells");
  auto report = verify_acyclic(c.cells.chain, out.matching);
  if (!report.acyclic) throw ContractViolation("grinding matching is not acyclic");
  std::vector<Interval> order;
  for (auto& [k, v] : intervals) order.push_back(v);
  std::sort(order.begin(), order.end(), [](const Interval& a, const Interval& b) {
    if (a.spread != b.spread) return a.spread > b.spread;
    if (a.dim != b.dim) return a.dim > b.dim;
    return a.up > b.up;
  });
  for (const auto& iv : order) out.trace.push_back("collapse " + std::to_string(iv.spread) + " " + iv.down + " -> " + iv.up);
  out.removed_cells = wide;
  out.thin = restrict_complex(c, thin);
  return out;
}

nlohmann::json to_json(const GarlandDescriptor& g) {
  nlohmann::json j{{"cubes", g.cube_count}, {"dim", g.cube_dim}, {"circles", g.circle_count}};
  if (g.degenerate) j["degenerate"] = true;
  return j;
}

GarlandDescriptor thin_garland(const FrontParams& p) {
  if (p.north < 0 || p.east < 0 || p.length() < 1 || p.band < 1) throw InvalidParameter("thin_garland: bad parameters");
  if (p.north == 0) return {static_cast<std::size_t>(p.band), 0, 0, true};
  const std::int64_t tight = std::int64_t{p.north} * std::max(p.gap - 1, 0);
  if (p.east < tight) throw UnsupportedParameter("thin_garland: the front complex is empty");
  // the g rotations of (N E^(g-1))^north; with a single N step they form a cycle instead
  if (p.east == tight && !(p.north == 1 && p.east > 0)) return {static_cast<std::size_t>(p.band) * std::max(p.gap, 1), 0, 0, true};
  const int g = std::gcd(p.north, p.east);
  return {static_cast<std::size_t>(p.band) * static_cast<std::size_t>(p.length() / g), g, 1, false};
}

GarlandDescriptor cycle_map_garland(int m, int n, int r) {
  if (m < 3 || n < 3 || r < 0 || 2 * r > m) throw InvalidParameter("cycle_map_garland: bad parameters");
  if (r == 0) return {static_cast<std::size_t>(n), 0, 0, true};
  const int g = std::gcd(m, r);
  return {static_cast<std::size_t>(m) * n / g, g, (m % 2 == 0 && n % 2 == 0) ? 2u : 1u, false};
}

ThinCensus census_thin(const FrontComplex& thin) {
  ThinCensus out;
  const auto& chain = thin.cells.chain;
  const FrontParams& p = thin.params;
  std::vector<std::vector<std::uint8_t>> has_coface(thin.flips.size());
  for (std::size_t d = 0; d < thin.flips.size(); ++d) has_coface[d].assign(thin.flips[d].size(), 0);
  for (int d = 1; d < static_cast<int>(thin.flips.size()); ++d)
    for (std::uint32_t i = 0; i < thin.flips[d].size(); ++i)
      for (const auto& e : chain.boundary(d, i)) has_coface[d - 1][e.index] = 1;
  std::set<int> dims;
  for (int d = 0; d < static_cast<int>(thin.flips.size()); ++d)
    for (std::uint32_t i = 0; i < thin.flips[d].size(); ++i) {
      if (has_coface[d][i]) continue;
      ++out.garland.cube_count;
      dims.insert(d);
      if (d == 0) continue;
      const Flip& f = thin.flips[d][i];
      const std::uint32_t members = 1u << d;
      std::vector<std::uint32_t> very;
      for (std::uint32_t c = 0; c < members; ++c)
        if (width_spread(member(f, c, p.band), p).kind == WidthClass::very_thin) very.push_back(c);
      if (very != std::vector<std::uint32_t>{0u, members - 1}) {
        out.antipodal_ok = false;
        out.detail = "cube " + key(f) + " has " + std::to_string(very.size()) + " very thin members";
      }
    }
  out.garland.cube_dim = dims.size() == 1 ? *dims.begin() : -1;
  if (thin.flips.size() <= 1) {
    out.garland.degenerate = true;
    out.garland.circle_count = 0;
  } else {
    out.garland.circle_count = split_components(chain).components.size();
  }
  return out;
}

// ---- maps between cycles -----------------------------------------------------

ChainComplex disjoint_union(const ChainComplex& a, const ChainComplex& b) {
  const bool aug = a.augmented() && b.augmented();
  ChainComplex out(aug);
  const int top = std::max(a.max_degree(), b.max_degree());
  for (int d = 0; d <= top; ++d) {
    out.reserve_degree(d);
    const auto shift = static_cast<std::uint32_t>(d > 0 ? a.size(d - 1) : 0);
    for (std::uint32_t j = 0; j < a.size(d); ++j) out.add_cell(d, d == 0 ? (aug ? SparseColumn{{0, 1}} : SparseColumn{}) : a.boundary(d, j));
    for (std::uint32_t j = 0; j < b.size(d); ++j) {
      SparseColumn col;
      if (d == 0) {
        if (aug) col.push_back({0, 1});
      } else {
        for (const auto& e : b.boundary(d, j)) col.push_back({e.index + shift, e.value});
      }
      out.add_cell(d, std::move(col));
    }
  }
  return out;
}

int winding_number(const std::vector<int>& values, int n) {
  const int m = static_cast<int>(values.size());
  int total = 0;
  for (int i = 0; i < m; ++i) {
    int step = mod(values[(i + 1) % m] - values[i], n);
    if (step == 1) {
      ++total;
    } else if (step == n - 1) {
      --total;
    } else {
      throw InvalidParameter("winding_number: values do not form a homomorphism of cycles");
    }
  }
  return total / n;
}

std::vector<int> admissible_windings(int m, int n) {
  std::vector<int> out;
  for (int w = -(m / n); w <= m / n; ++w)
    if ((m - n * std::abs(w)) % 2 == 0) out.push_back(w);
  return out;
}

CycleComponent cycle_component(int m, int n, int w) {
  if (m < 3 || n < 3) throw InvalidParameter("cycle_component needs m, n >= 3");
  if (n == 4) throw InvalidParameter("cycle_component: for n = 4 two-element values need not be flips; not supported");
  const int rest = m - n * std::abs(w);
  if (rest < 0 || rest % 2 != 0) throw InvalidParameter("cycle_component: m - n|w| must be even and nonnegative");
  CycleComponent out;
  out.m = m;
  out.n = n;
  out.w = w;
  out.r = rest / 2;
  out.degenerate = out.r == 0;
  const int eps = w >= 0 ? 1 : -1;  // +1: northbound steps go down

  // (i) the winding-w part of Hom(C_m, C_n)
  HomComplex hom = hom_complex(cycle_graph(m), cycle_graph(n));
  auto values_of = [&](int d, std::uint32_t i, bool lowest) {
    std::vector<int> v(m);
    for (int x = 1; x <= m; ++x) {
      std::uint32_t a = hom.value(d, i, x);
      int lo = std::countr_zero(a) + 1;
      int hi = 32 - std::countl_zero(a);
      v[x - 1] = lowest ? lo : hi;
    }
    return v;
  };
  std::vector<std::vector<std::uint8_t>> keep(hom.cells.chain.max_degree() + 1);
  for (int d = 0; d <= hom.cells.chain.max_degree(); ++d)
    for (std::uint32_t i = 0; i < hom.count(d); ++i) keep[d].push_back(winding_number(values_of(d, i, true), n) == w);
  ChainComplex part(true);
  std::vector<std::vector<std::uint32_t>> local(keep.size());
  std::vector<std::pair<int, std::uint32_t>> cells_in_part;
  for (int d = 0; d < static_cast<int>(keep.size()); ++d) {
    local[d].assign(keep[d].size(), 0xffffffffu);
    for (std::uint32_t i = 0; i < keep[d].size(); ++i) {
      if (!keep[d][i]) continue;
      SparseColumn col;
      if (d == 0) {
        col.push_back({0, 1});
      } else {
        for (const auto& e : hom.cells.chain.boundary(d, i)) {
          if (local[d - 1][e.index] == 0xffffffffu) throw ContractViolation("winding is not constant on a cell");
          col.push_back({local[d - 1][e.index], e.value});
        }
      }
      part.reserve_degree(d);
      local[d][i] = part.add_cell(d, std::move(col));
      cells_in_part.push_back({d, i});
    }
  }
  out.hom_part.kind = CellKind::prodsimplicial;
  out.hom_part.chain = std::move(part);

  // (ii) band front complexes
  const bool even = n % 2 == 0;
  const int band = even ? n / 2 : n;
  for (int copy = 0; copy < (even ? 2 : 1); ++copy) out.fronts.push_back(build_band_front_complex({out.r, m - out.r, 1, band}));

  // certificate: cell bijection preserving dimension, faces and |coefficients|
  auto to_flip = [&](int d, std::uint32_t i) -> std::pair<int, Flip> {
    auto lo = values_of(d, i, true);
    auto hi = values_of(d, i, false);
    std::vector<int> h(m);
    Flip f;
    for (int x = 0; x < m; ++x) {
      if (lo[x] == hi[x]) {
        h[x] = lo[x] - 1;
        continue;
      }
      // {a-1, a+1}: the neighbours carry a
      int a = lo[(x + m - 1) % m] - 1;
      h[x] = mod(a - eps, n);
      f.positions.push_back(x);
    }
    std::string word(m, 'E');
    for (int x = 0; x < m; ++x) {
      int step = mod(h[(x + 1) % m] - h[x], n);
      bool down = step == n - 1;
      if ((eps == 1) == down) word[x] = 'N';
    }
    const int e = mod(eps * h[0], n);
    int copy = 0, offset;
    if (!even) {
      offset = mod(-e * ((n + 1) / 2), n);
    } else {
      copy = e % 2;
      offset = mod(-(e - copy) / 2, band);
    }
    f.base = {offset, word};
    return {copy, f};
  };
  std::vector<std::vector<std::pair<int, std::uint32_t>>> image(keep.size());
  std::set<std::tuple<int, int, std::uint32_t>> seen;
  std::string fail;
  for (auto [d, i] : cells_in_part) {
    auto [copy, f] = to_flip(d, i);
    auto j = out.fronts[copy].find(f);
    if (!j) {
      fail = "no front cell " + key(f) + " for Hom cell " + hom.label(hom.mask(d, i));
      break;
    }
    if (!seen.insert({d, copy, *j}).second) {
      fail = "two Hom cells map to " + key(f);
      break;
    }
    image[d].resize(keep[d].size());
    image[d][i] = {copy, *j};
  }
  std::size_t front_cells = 0;
  for (const auto& fc : out.fronts) front_cells += fc.cells.cell_count();
  if (fail.empty() && front_cells != cells_in_part.size())
    fail = std::to_string(cells_in_part.size()) + " Hom cells but " + std::to_string(front_cells) + " front cells";
  if (fail.empty()) {
    for (auto [d, i] : cells_in_part) {
      if (d == 0) continue;
      auto [copy, j] = image[d][i];
      std::vector<std::pair<std::uint32_t, std::int64_t>> a, b;
      for (const auto& e : hom.cells.chain.boundary(d, i)) {
        auto [fc, fj] = image[d - 1][e.index];
        if (fc != copy) fail = "faces cross copies";
        a.push_back({fj, std::abs(e.value)});
      }
      for (const auto& e : out.fronts[copy].cells.chain.boundary(d, j)) b.push_back({e.index, std::abs(e.value)});
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) {
        fail = "boundary mismatch at " + hom.label(hom.mask(d, i));
        break;
      }
    }
  }
  if (!fail.empty()) throw ContractViolation("cycle_component(" + std::to_string(m) + "," + std::to_string(n) + "," +
                                             std::to_string(w) + "): " + fail);
  out.certified = true;
  out.certificate = std::to_string(cells_in_part.size()) + " cells matched to " + std::to_string(out.fronts.size()) +
                    " band-" + std::to_string(band) + " front complex" + (out.fronts.size() > 1 ? "es" : "");
  return out;
}

}  // namespace chom
