#include "chom/spectral.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "chom/errors.hpp"
#include "chom/homology.hpp"

namespace chom {

void FilteredChainComplex::check_filtration() const {
  const int lo = complex.min_degree();
  if (static_cast<int>(level.size()) != complex.max_degree() - lo + 1)
    throw ContractViolation("filtration levels do not cover every degree");
  for (int d = lo; d <= complex.max_degree(); ++d) {
    if (level[d - lo].size() != complex.size(d)) throw ContractViolation("filtration level count mismatch in degree " + std::to_string(d));
    for (std::uint32_t j = 0; j < complex.size(d); ++j)
      for (const auto& e : complex.boundary(d, j))
        if (level_of(d - 1, e.index) > level_of(d, j))
          throw ContractViolation("differential lowers the filtration at cell " + std::to_string(j) + " of degree " +
                                  std::to_string(d));
  }
}

std::size_t SpectralPage::dim(int p, int q) const {
  for (const auto& e : entries)
    if (e.p == p && e.q == q) return e.dim;
  return 0;
}

namespace {

struct Term {
  std::uint32_t pos;
  std::uint32_t val;
};

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

// col -= factor * other, mod p
void axpy(std::vector<Term>& col, std::uint32_t factor, const std::vector<Term>& other, std::uint32_t p,
          std::vector<Term>& scratch) {
  scratch.clear();
  std::size_t i = 0, j = 0;
  while (i < col.size() || j < other.size()) {
    if (j == other.size() || (i < col.size() && col[i].pos < other[j].pos)) {
      scratch.push_back(col[i++]);
    } else if (i == col.size() || other[j].pos < col[i].pos) {
      std::uint32_t v = static_cast<std::uint32_t>((p - (std::uint64_t(factor) * other[j].val) % p) % p);
      if (v) scratch.push_back({other[j].pos, v});
      ++j;
    } else {
      std::uint64_t sub = std::uint64_t(factor) * other[j].val % p;
      std::uint32_t v = static_cast<std::uint32_t>((col[i].val + p - sub) % p);
      if (v) scratch.push_back({col[i].pos, v});
      ++i;
      ++j;
    }
  }
  col.swap(scratch);
}

}  // namespace

SpectralPages spectral_pages(const FilteredChainComplex& f, int prime, int r_max) {
  if (!is_prime(prime)) throw InvalidParameter("spectral_pages: " + std::to_string(prime) + " is not prime");
  if (r_max < 0) throw InvalidParameter("spectral_pages: negative page index");
  f.check_filtration();
  const ChainComplex& c = f.complex;
  const int lo = c.min_degree();
  const std::uint32_t p = static_cast<std::uint32_t>(prime);

  // global filtration order: (level, degree, index)
  struct Cell {
    int level;
    int degree;
    std::uint32_t index;
  };
  std::vector<Cell> cells;
  std::vector<std::vector<std::uint32_t>> pos(c.max_degree() - lo + 1);
  for (int d = lo; d <= c.max_degree(); ++d)
    for (std::uint32_t j = 0; j < c.size(d); ++j) cells.push_back({f.level_of(d, j), d, j});
  std::vector<std::uint32_t> order(cells.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (cells[a].level != cells[b].level) return cells[a].level < cells[b].level;
    return cells[a].degree < cells[b].degree;
  });
  std::vector<Cell> sorted(cells.size());
  for (int d = lo; d <= c.max_degree(); ++d) pos[d - lo].resize(c.size(d));
  for (std::uint32_t k = 0; k < order.size(); ++k) {
    const Cell& cell = cells[order[k]];
    sorted[k] = cell;
    pos[cell.degree - lo][cell.index] = k;
  }

  constexpr std::uint32_t kNone = 0xffffffffu;
  std::vector<std::uint32_t> partner(cells.size(), kNone);
  std::vector<std::uint8_t> cleared(cells.size(), 0);
  std::vector<std::vector<Term>> reduced(cells.size());
  std::vector<std::uint32_t> pivot_of(cells.size(), kNone);  // row -> column holding it as low
  std::vector<Term> col, scratch;
  for (int d = c.max_degree(); d > lo; --d) {
    std::vector<std::uint32_t> columns(pos[d - lo]);
    std::sort(columns.begin(), columns.end());
    for (std::uint32_t k : columns) {
      if (cleared[k]) continue;
      const Cell& cell = sorted[k];
      col.clear();
      for (const auto& e : c.boundary(cell.degree, cell.index)) {
        std::int64_t v = e.value % prime;
        if (v < 0) v += prime;
        if (v) col.push_back({pos[d - 1 - lo][e.index], static_cast<std::uint32_t>(v)});
      }
      std::sort(col.begin(), col.end(), [](const Term& a, const Term& b) { return a.pos < b.pos; });
      while (!col.empty() && pivot_of[col.back().pos] != kNone) {
        const auto& other = reduced[pivot_of[col.back().pos]];
        std::uint32_t factor = static_cast<std::uint32_t>(std::uint64_t(col.back().val) * inv_mod(other.back().val, p) % p);
        axpy(col, factor, other, p, scratch);
      }
      if (col.empty()) continue;
      std::uint32_t low = col.back().pos;
      pivot_of[low] = k;
      partner[low] = k;
      partner[k] = low;
      cleared[low] = 1;
      reduced[k] = col;
    }
  }

  // count[(level, degree)] of cells alive on page r: unpaired or gap >= r
  std::map<std::pair<int, int>, std::vector<std::size_t>> survive;  // gap histogram, last slot = unpaired
  const int slots = r_max + 2;
  for (std::uint32_t k = 0; k < sorted.size(); ++k) {
    auto& hist = survive[{sorted[k].level, sorted[k].degree}];
    if (hist.empty()) hist.assign(slots, 0);
    if (partner[k] == kNone) {
      ++hist[slots - 1];
    } else {
      int gap = std::abs(sorted[partner[k]].level - sorted[k].level);
      ++hist[std::min(gap, r_max)];
    }
  }
  SpectralPages out;
  for (int r = 0; r <= r_max; ++r) {
    SpectralPage page{r, {}};
    for (const auto& [key, hist] : survive) {
      std::size_t n = hist[slots - 1];
      for (int g = r; g <= r_max; ++g) n += hist[g];
      if (n) page.entries.push_back({key.first, key.second - key.first, n});
    }
    out.pages.push_back(std::move(page));
  }
  out.infinity.r = -1;
  for (const auto& [key, hist] : survive)
    if (hist[slots - 1]) out.infinity.entries.push_back({key.first, key.second - key.first, hist[slots - 1]});
  return out;
}

nlohmann::json to_json(const SpectralPage& page) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : page.entries) entries.push_back({{"p", e.p}, {"q", e.q}, {"dim", e.dim}});
  nlohmann::json j{{"entries", entries}};
  if (page.r < 0) {
    j["page"] = "infinity";
  } else {
    j["page"] = page.r;
  }
  return j;
}

}  // namespace chom
