#include "chom/morse.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <string>

#include "chom/errors.hpp"

namespace chom {

namespace {

struct Indexing {
  int min_degree;
  std::vector<std::uint32_t> offset;

  explicit Indexing(const ChainComplex& c) : min_degree(c.min_degree()) {
    std::uint32_t total = 0;
    for (int d = c.min_degree(); d <= c.max_degree(); ++d) {
      offset.push_back(total);
      total += static_cast<std::uint32_t>(c.size(d));
    }
    offset.push_back(total);
  }
  std::uint32_t total() const { return offset.back(); }
  std::uint32_t id(CellRef r) const { return offset[r.degree - min_degree] + r.index; }
  CellRef ref(std::uint32_t id) const {
    auto it = std::upper_bound(offset.begin(), offset.end(), id);
    int slot = static_cast<int>(it - offset.begin()) - 1;
    return {slot + min_degree, id - offset[slot]};
  }
};

std::string name(CellRef r) { return "(" + std::to_string(r.degree) + "," + std::to_string(r.index) + ")"; }

std::int64_t incidence(const ChainComplex& c, CellRef upper, CellRef lower) {
  for (const auto& e : c.boundary(upper.degree, upper.index))
    if (e.index == lower.index) return e.value;
  return 0;
}

constexpr std::uint32_t kNone = 0xffffffffu;

struct Partners {
  std::vector<std::uint32_t> up;    // for a lower cell: its matched coface
  std::vector<std::uint32_t> down;  // for an upper cell: its matched face
};

Partners validate(const ChainComplex& c, const MorseMatching& m, const Indexing& ix) {
  Partners p{std::vector<std::uint32_t>(ix.total(), kNone), std::vector<std::uint32_t>(ix.total(), kNone)};
  std::vector<std::uint8_t> used(ix.total(), 0);
  for (const auto& pair : m.pairs) {
    if (pair.upper.degree != pair.lower.degree + 1)
      throw ContractViolation("matched pair " + name(pair.lower) + "-" + name(pair.upper) + " is not in adjacent degrees");
    if (pair.lower.index >= c.size(pair.lower.degree) || pair.upper.index >= c.size(pair.upper.degree))
      throw ContractViolation("matched pair " + name(pair.lower) + "-" + name(pair.upper) + " refers to a missing cell");
    std::int64_t v = incidence(c, pair.upper, pair.lower);
    if (v == 0 || v != pair.coefficient)
      throw ContractViolation("matched pair " + name(pair.lower) + "-" + name(pair.upper) +
                              " does not carry its stated incidence");
    std::uint32_t a = ix.id(pair.lower), b = ix.id(pair.upper);
    if (used[a] || used[b]) throw ContractViolation("cell matched twice in pair " + name(pair.lower) + "-" + name(pair.upper));
    used[a] = used[b] = 1;
    p.up[a] = b;
    p.down[b] = a;
  }
  return p;
}

}  // namespace

AcyclicityReport verify_acyclic(const ChainComplex& c, const MorseMatching& m) {
  Indexing ix(c);
  Partners p = validate(c, m, ix);
  const std::uint32_t n = ix.total();
  // successors: faces except the matched one, plus the matched coface
  auto successors = [&](std::uint32_t u, std::vector<std::uint32_t>& out) {
    out.clear();
    CellRef r = ix.ref(u);
    if (p.up[u] != kNone) out.push_back(p.up[u]);
    if (r.degree > c.min_degree())
      for (const auto& e : c.boundary(r.degree, r.index)) {
        std::uint32_t f = ix.id({r.degree - 1, e.index});
        if (f != p.down[u]) out.push_back(f);
      }
  };
  std::vector<std::uint8_t> color(n, 0);  // 0 new, 1 on stack, 2 done
  struct Frame {
    std::uint32_t node;
    std::vector<std::uint32_t> next;
    std::size_t pos;
  };
  std::vector<Frame> stack;
  for (std::uint32_t s = 0; s < n; ++s) {
    // only matched cells can lie on a cycle
    if (color[s] || p.up[s] == kNone) continue;
    stack.push_back({s, {}, 0});
    successors(s, stack.back().next);
    color[s] = 1;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.pos == f.next.size()) {
        color[f.node] = 2;
        stack.pop_back();
        continue;
      }
      std::uint32_t v = f.next[f.pos++];
      if (color[v] == 1) {
        AcyclicityReport rep{false, {}};
        std::size_t k = stack.size();
        while (k > 0 && stack[k - 1].node != v) --k;
        for (std::size_t i = k - 1; i < stack.size(); ++i) rep.witness.push_back(ix.ref(stack[i].node));
        return rep;
      }
      if (color[v] == 2) continue;
      color[v] = 1;
      stack.push_back({v, {}, 0});
      successors(v, stack.back().next);
    }
  }
  return {};
}

MorseReduction morse_reduce(const ChainComplex& c, const MorseMatching& m, std::int64_t modulus) {
  Indexing ix(c);
  Partners p = validate(c, m, ix);
  auto report = verify_acyclic(c, m);
  if (!report.acyclic) {
    std::string cyc;
    for (auto r : report.witness) cyc += name(r) + " ";
    throw ContractViolation("matching is not acyclic; cycle " + cyc);
  }
  auto norm = [modulus](std::int64_t v) {
    if (modulus == 0) return v;
    v %= modulus;
    return v < 0 ? v + modulus : v;
  };
  auto inverse = [&](std::int64_t u) -> std::int64_t {
    u = norm(u);
    if (modulus == 0) {
      if (u != 1 && u != -1) throw ContractViolation("matched pair has non-unit incidence " + std::to_string(u));
      return u;
    }
    for (std::int64_t x = 1; x < modulus; ++x)
      if (u * x % modulus == 1) return x;
    throw ContractViolation("matched pair has non-unit incidence " + std::to_string(u) + " mod " + std::to_string(modulus));
  };
  for (const auto& pair : m.pairs) inverse(pair.coefficient);

  const bool keep_aug = c.augmented() && (p.up[ix.id({-1, 0})] == kNone);
  MorseReduction out{ChainComplex(keep_aug), {}};
  const int lo = keep_aug ? -1 : 0;
  // index of each critical cell within its degree
  std::vector<std::uint32_t> crit_index(ix.total(), kNone);
  for (int d = c.min_degree(); d <= c.max_degree(); ++d) {
    if (d >= lo) out.critical.emplace_back();
    for (std::uint32_t i = 0; i < c.size(d); ++i) {
      std::uint32_t id = ix.id({d, i});
      if (p.up[id] != kNone || p.down[id] != kNone) continue;
      if (d < lo) continue;
      crit_index[id] = static_cast<std::uint32_t>(out.critical[d - lo].size());
      out.critical[d - lo].push_back(i);
    }
  }

  for (int d = std::max(lo, c.min_degree()); d <= c.max_degree(); ++d) {
    const auto& crit = out.critical[d - lo];
    if (d == lo) {
      if (d >= 0)
        for (std::size_t k = 0; k < crit.size(); ++k) out.complex.add_cell(d, {});
      continue;
    }
    // topological rank of lower-matched cells in degree d-1
    std::vector<std::uint32_t> rank(ix.total(), kNone);
    {
      std::vector<std::uint32_t> order;
      std::vector<std::uint8_t> state(ix.total(), 0);
      for (std::uint32_t i = 0; i < c.size(d - 1); ++i) {
        std::uint32_t s = ix.id({d - 1, i});
        if (p.up[s] == kNone || state[s]) continue;
        std::vector<std::pair<std::uint32_t, std::size_t>> st{{s, 0}};
        state[s] = 1;
        while (!st.empty()) {
          const std::uint32_t u = st.back().first;
          std::size_t& pos = st.back().second;
          CellRef tau = ix.ref(p.up[u]);
          const auto& col = c.boundary(tau.degree, tau.index);
          std::uint32_t next = kNone;
          while (pos < col.size()) {
            std::uint32_t v = ix.id({d - 1, col[pos++].index});
            if (v == u || p.up[v] == kNone || state[v]) continue;
            next = v;
            break;
          }
          if (next != kNone) {
            state[next] = 1;
            st.push_back({next, 0});
          } else {
            order.push_back(u);
            st.pop_back();
          }
        }
      }
      // order is a post-order: successors first. Process predecessors first.
      std::reverse(order.begin(), order.end());
      for (std::uint32_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
    }
    for (std::uint32_t ci : crit) {
      std::map<std::uint32_t, std::int64_t> acc;  // id -> coefficient
      using QItem = std::pair<std::uint32_t, std::uint32_t>;  // rank, id
      std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pending;
      auto add = [&](std::uint32_t id, std::int64_t v) {
        std::int64_t cur = acc[id];
        std::int64_t next;
        if (__builtin_add_overflow(cur, v, &next)) throw ContractViolation("morse_reduce coefficient overflow");
        next = norm(next);
        acc[id] = next;
        if (rank[id] != kNone && cur == 0 && next != 0) pending.push({rank[id], id});
      };
      for (const auto& e : c.boundary(d, ci)) add(ix.id({d - 1, e.index}), norm(e.value));
      while (!pending.empty()) {
        auto [r, sigma] = pending.top();
        pending.pop();
        std::int64_t a = acc[sigma];
        if (a == 0) continue;
        CellRef tau = ix.ref(p.up[sigma]);
        std::int64_t u = incidence(c, tau, ix.ref(sigma));
        std::int64_t factor;
        if (__builtin_mul_overflow(a, inverse(u), &factor)) throw ContractViolation("morse_reduce coefficient overflow");
        factor = norm(factor);
        for (const auto& e : c.boundary(tau.degree, tau.index)) {
          std::int64_t t;
          if (__builtin_mul_overflow(factor, e.value, &t)) throw ContractViolation("morse_reduce coefficient overflow");
          add(ix.id({d - 1, e.index}), norm(-t));
        }
        if (acc[sigma] != 0) throw ContractViolation("zig-zag left a matched cell behind");
      }
      SparseColumn col;
      for (const auto& [id, v] : acc) {
        if (v == 0 || crit_index[id] == kNone) continue;
        col.push_back({crit_index[id], v});
      }
      out.complex.add_cell(d, std::move(col));
    }
  }
  return out;
}

}  // namespace chom
