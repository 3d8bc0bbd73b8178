#include "chom/chain_complex.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "chom/errors.hpp"

namespace chom {

ChainComplex::ChainComplex(bool augmented) : augmented_(augmented) {
  if (augmented_) cells_.push_back({SparseColumn{}});
}

std::size_t ChainComplex::size(int degree) const {
  if (degree < min_degree() || degree > max_degree()) return 0;
  return cells_[degree - min_degree()].size();
}

std::size_t ChainComplex::total_cells() const {
  std::size_t total = 0;
  for (const auto& d : cells_) total += d.size();
  return total;
}

void ChainComplex::reserve_degree(int degree) {
  while (max_degree() < degree) cells_.emplace_back();
}

std::uint32_t ChainComplex::add_cell(int degree, SparseColumn boundary) {
  if (degree < min_degree()) throw InvalidParameter("add_cell: degree " + std::to_string(degree) + " below minimum");
  if (augmented_ && degree == -1) throw InvalidParameter("add_cell: augmentation cell already present");
  reserve_degree(degree);
  std::sort(boundary.begin(), boundary.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  SparseColumn merged;
  merged.reserve(boundary.size());
  for (const auto& e : boundary) {
    if (!merged.empty() && merged.back().index == e.index) {
      merged.back().value += e.value;
    } else {
      merged.push_back(e);
    }
  }
  std::erase_if(merged, [](const SparseEntry& e) { return e.value == 0; });
  auto& slot = cells_[degree - min_degree()];
  slot.push_back(std::move(merged));
  return static_cast<std::uint32_t>(slot.size() - 1);
}

const SparseColumn& ChainComplex::boundary(int degree, std::uint32_t index) const {
  if (degree < min_degree() || degree > max_degree() || index >= size(degree))
    throw InvalidParameter("boundary: no cell " + std::to_string(index) + " in degree " + std::to_string(degree));
  return cells_[degree - min_degree()][index];
}

std::vector<BoundaryTriple> ChainComplex::boundary_triples(int degree) const {
  std::vector<BoundaryTriple> out;
  for (std::uint32_t j = 0; j < size(degree); ++j)
    for (const auto& e : boundary(degree, j)) out.push_back({e.index, j, e.value});
  return out;
}

void ChainComplex::check_square_zero(std::int64_t modulus) const {
  for (int d = min_degree(); d <= max_degree(); ++d) {
    const std::size_t below = size(d - 1);
    for (std::uint32_t j = 0; j < size(d); ++j) {
      const auto& col = boundary(d, j);
      if (d == min_degree() && !col.empty())
        throw ContractViolation("cell " + std::to_string(j) + " in lowest degree has a boundary");
      for (const auto& e : col)
        if (e.index >= below)
          throw ContractViolation("cell " + std::to_string(j) + " in degree " + std::to_string(d) +
                                  " refers to missing face " + std::to_string(e.index));
    }
  }
  std::unordered_map<std::uint32_t, std::int64_t> acc;
  for (int d = min_degree() + 2; d <= max_degree(); ++d) {
    for (std::uint32_t j = 0; j < size(d); ++j) {
      acc.clear();
      for (const auto& e : boundary(d, j))
        for (const auto& f : boundary(d - 1, e.index)) acc[f.index] += e.value * f.value;
      for (const auto& [row, v] : acc)
        if (modulus ? v % modulus != 0 : v != 0)
          throw ContractViolation("boundary squared is nonzero: cell " + std::to_string(j) + " in degree " +
                                  std::to_string(d) + " reaches cell " + std::to_string(row) + " in degree " +
                                  std::to_string(d - 2) + " with coefficient " + std::to_string(v));
    }
  }
}

ChainComplex drop_augmentation(const ChainComplex& c) {
  if (!c.augmented()) return c;
  ChainComplex out(false);
  for (int d = 0; d <= c.max_degree(); ++d) {
    out.reserve_degree(d);
    for (std::uint32_t j = 0; j < c.size(d); ++j) out.add_cell(d, d == 0 ? SparseColumn{} : c.boundary(d, j));
  }
  return out;
}

std::vector<std::size_t> cell_counts(const ChainComplex& c) {
  std::vector<std::size_t> out;
  for (int d = c.min_degree(); d <= c.max_degree(); ++d) out.push_back(c.size(d));
  return out;
}

}  // namespace chom
