#include "chom/homology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "chom/errors.hpp"

namespace chom {

namespace {

struct Overflow {};

// Coefficient rings for the reducer. Each provides value_type, from(int64),
// is_zero, is_unit, inverse (units only) and multiply-subtract.
struct CheckedInt {
  using value_type = std::int64_t;
  static value_type from(std::int64_t v) { return v; }
  static bool is_zero(value_type v) { return v == 0; }
  static bool is_unit(value_type v) { return v == 1 || v == -1; }
  static value_type inverse(value_type v) { return v; }
  static value_type mul(value_type a, value_type b) {
    value_type r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static value_type sub(value_type a, value_type b) {
    value_type r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static BigInt to_big(value_type v) { return BigInt(v); }
};

struct BigRing {
  using value_type = BigInt;
  static value_type from(std::int64_t v) { return BigInt(v); }
  static bool is_zero(const value_type& v) { return v.is_zero(); }
  static bool is_unit(const value_type& v) { return v == 1 || v == -1; }
  static value_type inverse(const value_type& v) { return v; }
  static value_type mul(const value_type& a, const value_type& b) { return a * b; }
  static value_type sub(const value_type& a, const value_type& b) { return a - b; }
  static BigInt to_big(const value_type& v) { return v; }
};

struct PrimeField {
  using value_type = std::int64_t;
  std::int64_t p;
  value_type from(std::int64_t v) const { return ((v % p) + p) % p; }
  static bool is_zero(value_type v) { return v == 0; }
  static bool is_unit(value_type v) { return v != 0; }
  value_type inverse(value_type v) const {
    std::int64_t result = 1, base = v, e = p - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  }
  value_type mul(value_type a, value_type b) const { return a * b % p; }
  value_type sub(value_type a, value_type b) const { return ((a - b) % p + p) % p; }
  static BigInt to_big(value_type v) { return BigInt(v); }
};

// Reduces a chain complex by eliminating pairs (a, b) with a unit incidence
// [∂b : a]. Each elimination is a change of basis, so homology is preserved.
// The residue has no unit entries and is handed to Smith normal form.
template <class Ring>
class Reducer {
 public:
  using V = typename Ring::value_type;
  struct Entry {
    std::uint32_t cell;
    V value;
  };

  Reducer(const ChainComplex& c, Ring ring) : ring_(ring), min_degree_(c.min_degree()) {
    std::size_t total = 0;
    for (int d = c.min_degree(); d <= c.max_degree(); ++d) {
      offset_.push_back(static_cast<std::uint32_t>(total));
      total += c.size(d);
    }
    offset_.push_back(static_cast<std::uint32_t>(total));
    degree_.resize(total);
    alive_.assign(total, 1);
    bd_.resize(total);
    cob_.resize(total);
    for (int d = c.min_degree(); d <= c.max_degree(); ++d) {
      const std::uint32_t base = offset_[d - min_degree_];
      const std::uint32_t below = d > min_degree_ ? offset_[d - 1 - min_degree_] : 0;
      for (std::uint32_t j = 0; j < c.size(d); ++j) {
        const std::uint32_t id = base + j;
        degree_[id] = d;
        auto& col = bd_[id];
        for (const auto& e : c.boundary(d, j)) {
          V v = ring_.from(e.value);
          if (Ring::is_zero(v)) continue;
          col.push_back({below + e.index, v});
          cob_[below + e.index].push_back(id);
        }
      }
    }
  }

  void run() {
    std::deque<std::uint32_t> queue;
    for (std::uint32_t id = 0; id < bd_.size(); ++id) queue.push_back(id);
    drain(queue);
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::uint32_t a = 0; a < bd_.size(); ++a) {
        if (!alive_[a]) continue;
        clean(a);
        std::uint32_t best = 0;
        std::size_t best_cost = std::numeric_limits<std::size_t>::max();
        for (std::uint32_t b : cob_[a]) {
          const V* u = coefficient(b, a);
          if (!Ring::is_unit(*u)) continue;
          std::size_t cost = (cob_[a].size() - 1) * (bd_[b].size() - 1);
          if (cost < best_cost) {
            best_cost = cost;
            best = b;
          }
        }
        if (best_cost == std::numeric_limits<std::size_t>::max()) continue;
        eliminate(a, best, queue);
        drain(queue);
        progress = true;
      }
    }
  }

  // Alive cells of degree d, in id order.
  std::vector<std::uint32_t> survivors(int d) const {
    std::vector<std::uint32_t> out;
    if (d < min_degree_ || d - min_degree_ + 1 >= static_cast<int>(offset_.size())) return out;
    for (std::uint32_t id = offset_[d - min_degree_]; id < offset_[d - min_degree_ + 1]; ++id)
      if (alive_[id]) out.push_back(id);
    return out;
  }

  const std::vector<Entry>& column(std::uint32_t id) const { return bd_[id]; }
  int max_degree() const { return min_degree_ + static_cast<int>(offset_.size()) - 2; }

 private:
  const V* coefficient(std::uint32_t c, std::uint32_t a) const {
    const auto& col = bd_[c];
    auto it = std::lower_bound(col.begin(), col.end(), a, [](const Entry& e, std::uint32_t x) { return e.cell < x; });
    if (it == col.end() || it->cell != a) return nullptr;
    return &it->value;
  }

  void clean(std::uint32_t a) {
    auto& cob = cob_[a];
    std::sort(cob.begin(), cob.end());
    cob.erase(std::unique(cob.begin(), cob.end()), cob.end());
    std::erase_if(cob, [&](std::uint32_t c) { return !alive_[c] || coefficient(c, a) == nullptr; });
  }

  void drain(std::deque<std::uint32_t>& queue) {
    while (!queue.empty()) {
      std::uint32_t a = queue.front();
      queue.pop_front();
      if (!alive_[a]) continue;
      clean(a);
      if (cob_[a].size() != 1) continue;
      std::uint32_t b = cob_[a][0];
      if (!Ring::is_unit(*coefficient(b, a))) continue;
      eliminate(a, b, queue);
    }
  }

  void eliminate(std::uint32_t a, std::uint32_t b, std::deque<std::uint32_t>& queue) {
    const V uinv = ring_.inverse(*coefficient(b, a));
    clean(a);
    const std::vector<Entry> bcol = bd_[b];
    for (std::uint32_t c : cob_[a]) {
      if (c == b) continue;
      const V factor = ring_.mul(*coefficient(c, a), uinv);
      subtract_scaled(c, factor, bcol);
    }
    clean(b);
    for (std::uint32_t e : cob_[b]) {
      auto& col = bd_[e];
      std::erase_if(col, [b](const Entry& x) { return x.cell == b; });
    }
    alive_[a] = alive_[b] = 0;
    for (const auto& f : bd_[a]) queue.push_back(f.cell);
    for (const auto& f : bcol) queue.push_back(f.cell);
    std::vector<Entry>().swap(bd_[a]);
    std::vector<Entry>().swap(bd_[b]);
    std::vector<std::uint32_t>().swap(cob_[a]);
    std::vector<std::uint32_t>().swap(cob_[b]);
  }

  // bd[c] -= factor * col
  void subtract_scaled(std::uint32_t c, const V& factor, const std::vector<Entry>& col) {
    const auto& old = bd_[c];
    std::vector<Entry> merged;
    merged.reserve(old.size() + col.size());
    std::size_t i = 0, j = 0;
    while (i < old.size() || j < col.size()) {
      if (j == col.size() || (i < old.size() && old[i].cell < col[j].cell)) {
        merged.push_back(old[i++]);
      } else if (i == old.size() || col[j].cell < old[i].cell) {
        V v = ring_.sub(ring_.from(0), ring_.mul(factor, col[j].value));
        cob_[col[j].cell].push_back(c);
        merged.push_back({col[j].cell, std::move(v)});
        ++j;
      } else {
        V v = ring_.sub(old[i].value, ring_.mul(factor, col[j].value));
        if (!Ring::is_zero(v)) merged.push_back({old[i].cell, std::move(v)});
        ++i;
        ++j;
      }
    }
    bd_[c] = std::move(merged);
  }

  Ring ring_;
  int min_degree_;
  std::vector<std::uint32_t> offset_;
  std::vector<int> degree_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::vector<Entry>> bd_;
  std::vector<std::vector<std::uint32_t>> cob_;
};

std::vector<BigInt> invariant_chain(std::vector<BigInt> diag) {
  for (auto& d : diag) d = abs(d);
  std::erase_if(diag, [](const BigInt& v) { return v.is_zero(); });
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      BigInt g = boost::multiprecision::gcd(diag[i], diag[j]);
      BigInt l = diag[i] / g * diag[j];
      diag[i] = g;
      diag[j] = l;
    }
  return diag;
}

template <class Ring>
HomologyResult integer_from_reducer(Reducer<Ring>& red, bool augmented, int min_degree) {
  const int top = red.max_degree();
  std::vector<std::vector<std::uint32_t>> alive(top - min_degree + 2);
  for (int d = min_degree; d <= top; ++d) alive[d - min_degree] = red.survivors(d);
  // rank and invariant factors of each residual boundary map
  std::vector<std::size_t> rank(top - min_degree + 2, 0);
  std::vector<std::vector<BigInt>> factors(top - min_degree + 2);
  for (int d = min_degree + 1; d <= top; ++d) {
    const auto& rows = alive[d - 1 - min_degree];
    const auto& cols = alive[d - min_degree];
    if (rows.empty() || cols.empty()) continue;
    std::vector<BigInt> dense(rows.size() * cols.size());
    bool any = false;
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& e : red.column(cols[j])) {
        auto it = std::lower_bound(rows.begin(), rows.end(), e.cell);
        std::size_t i = static_cast<std::size_t>(it - rows.begin());
        dense[i * cols.size() + j] = Ring::to_big(e.value);
        any = true;
      }
    if (!any) continue;
    factors[d - min_degree] = smith_invariants(rows.size(), cols.size(), std::move(dense));
    rank[d - min_degree] = factors[d - min_degree].size();
  }
  HomologyResult out;
  out.reduced = augmented;
  for (int d = min_degree; d <= top; ++d) {
    HomologyGroup g;
    g.degree = d;
    const std::size_t n = alive[d - min_degree].size();
    g.betti = n - rank[d - min_degree] - (d + 1 <= top ? rank[d + 1 - min_degree] : 0);
    if (d + 1 <= top)
      for (const auto& f : factors[d + 1 - min_degree])
        if (f > 1) {
          if (f > std::numeric_limits<std::int64_t>::max()) throw ContractViolation("torsion coefficient exceeds 64 bits");
          g.torsion.push_back(static_cast<std::int64_t>(f));
        }
    if (d == -1 && g.is_zero()) continue;
    out.groups.push_back(std::move(g));
  }
  return out;
}

}  // namespace

std::vector<BigInt> smith_invariants(std::size_t rows, std::size_t cols, std::vector<BigInt> a) {
  if (a.size() != rows * cols) throw InvalidParameter("smith_invariants: entry count does not match shape");
  auto at = [&](std::size_t i, std::size_t j) -> BigInt& { return a[i * cols + j]; };
  std::vector<BigInt> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pivot: nonzero entry of least absolute value in the trailing block
    std::size_t pi = rows, pj = cols;
    BigInt best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        const BigInt& v = at(i, j);
        if (v.is_zero()) continue;
        if (pi == rows || abs(v) < best) {
          best = abs(v);
          pi = i;
          pj = j;
          if (best == 1) break;
        }
      }
    if (pi == rows) break;
    if (pi != t)
      for (std::size_t j = 0; j < cols; ++j) std::swap(at(pi, j), at(t, j));
    if (pj != t)
      for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, pj), at(i, t));
    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (at(i, t).is_zero()) continue;
      BigInt q = at(i, t) / at(t, t);
      for (std::size_t j = t; j < cols; ++j)
        if (!at(t, j).is_zero()) at(i, j) -= q * at(t, j);
      if (!at(i, t).is_zero()) clean = false;
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (at(t, j).is_zero()) continue;
      BigInt q = at(t, j) / at(t, t);
      for (std::size_t i = t; i < rows; ++i)
        if (!at(i, t).is_zero()) at(i, j) -= q * at(i, t);
      if (!at(t, j).is_zero()) clean = false;
    }
    if (!clean) continue;  // a smaller remainder appeared; pivot again
    diag.push_back(at(t, t));
    ++t;
  }
  return invariant_chain(std::move(diag));
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

HomologyResult homology_integer(const ChainComplex& c, bool check_boundary) {
  if (check_boundary) c.check_square_zero();
  try {
    Reducer<CheckedInt> red(c, CheckedInt{});
    red.run();
    return integer_from_reducer(red, c.augmented(), c.min_degree());
  } catch (const Overflow&) {
    Reducer<BigRing> red(c, BigRing{});
    red.run();
    return integer_from_reducer(red, c.augmented(), c.min_degree());
  }
}

BettiNumbers homology_mod_p(const ChainComplex& c, int p, bool check_boundary) {
  if (!is_prime(p)) throw InvalidParameter("homology_mod_p: " + std::to_string(p) + " is not prime");
  if (check_boundary) c.check_square_zero(p);
  Reducer<PrimeField> red(c, PrimeField{p});
  red.run();
  BettiNumbers out;
  out.min_degree = c.min_degree();
  // every nonzero entry over a field is a unit, so the residue has zero boundary
  for (int d = c.min_degree(); d <= c.max_degree(); ++d) out.values.push_back(red.survivors(d).size());
  return out;
}

std::size_t BettiNumbers::at(int degree) const {
  if (degree < min_degree || degree - min_degree >= static_cast<int>(values.size())) return 0;
  return values[degree - min_degree];
}

BettiNumbers mod_p_from_integer(const HomologyResult& h, int p) {
  BettiNumbers out;
  if (h.groups.empty()) return out;
  out.min_degree = h.reduced ? -1 : 0;
  int top = h.groups.back().degree;
  for (int d = out.min_degree; d <= top + 1; ++d) {
    std::size_t b = h.betti(d);
    auto count = [p](const std::vector<std::int64_t>& t) {
      return static_cast<std::size_t>(std::count_if(t.begin(), t.end(), [p](std::int64_t x) { return x % p == 0; }));
    };
    if (h.variance == Variance::homology) {
      b += count(h.torsion(d)) + count(h.torsion(d - 1));
    } else {
      b += count(h.torsion(d)) + count(h.torsion(d + 1));
    }
    out.values.push_back(b);
  }
  while (!out.values.empty() && out.values.back() == 0) out.values.pop_back();
  return out;
}

std::int64_t euler_characteristic(const ChainComplex& c) {
  std::int64_t chi = 0;
  for (int d = c.min_degree(); d <= c.max_degree(); ++d) {
    const auto n = static_cast<std::int64_t>(c.size(d));
    chi += (d % 2 == 0) ? n : -n;
  }
  return chi;
}

const HomologyGroup* HomologyResult::find(int degree) const {
  for (const auto& g : groups)
    if (g.degree == degree) return &g;
  return nullptr;
}

std::size_t HomologyResult::betti(int degree) const {
  const auto* g = find(degree);
  return g ? g->betti : 0;
}

std::vector<std::int64_t> HomologyResult::torsion(int degree) const {
  const auto* g = find(degree);
  return g ? g->torsion : std::vector<std::int64_t>{};
}

std::vector<HomologyGroup> HomologyResult::nonzero() const {
  std::vector<HomologyGroup> out;
  for (const auto& g : groups)
    if (!g.is_zero()) out.push_back(g);
  return out;
}

bool HomologyResult::same_groups(const HomologyResult& other) const {
  return variance == other.variance && nonzero() == other.nonzero();
}

HomologyResult to_cohomology(const HomologyResult& h) {
  if (h.variance == Variance::cohomology) return h;
  HomologyResult out;
  out.reduced = h.reduced;
  out.variance = Variance::cohomology;
  for (const auto& g : h.groups) {
    HomologyGroup c;
    c.degree = g.degree;
    c.betti = g.betti;
    c.torsion = h.torsion(g.degree - 1);
    out.groups.push_back(std::move(c));
  }
  if (!h.groups.empty()) {
    const auto& last = h.groups.back();
    if (!last.torsion.empty()) out.groups.push_back({last.degree + 1, 0, last.torsion});
  }
  return out;
}

nlohmann::json to_json(const HomologyResult& h) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : h.groups)
    groups.push_back({{"dim", g.degree}, {"betti", g.betti}, {"torsion", g.torsion}});
  return {{"reduced", h.reduced},
          {"variance", h.variance == Variance::homology ? "homology" : "cohomology"},
          {"groups", groups}};
}

std::string describe(const HomologyResult& h) {
  std::ostringstream out;
  bool first = true;
  auto term = [&](const std::string& s) {
    if (!first) out << " + ";
    out << s;
    first = false;
  };
  for (const auto& g : h.groups) {
    if (g.betti > 0)
      term(g.betti == 1 ? "Z(" + std::to_string(g.degree) + ")"
                        : "Z^" + std::to_string(g.betti) + "(" + std::to_string(g.degree) + ")");
    for (auto t : g.torsion) term("Z" + std::to_string(t) + "(" + std::to_string(g.degree) + ")");
  }
  if (first) return "0";
  return out.str();
}

}  // namespace chom
