#pragma once

#include <cstddef>
#include <cstdint>
#include <tuple>
#include <vector>

namespace chom {

struct SparseEntry {
  std::uint32_t index;  // cell index in degree d-1
  std::int64_t value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

// Sorted by index, no zero values.
using SparseColumn = std::vector<SparseEntry>;

// Boundary triple of the matrix d_d: (row in degree d-1, column in degree d, value).
struct BoundaryTriple {
  std::uint32_t row;
  std::uint32_t col;
  std::int64_t value;
};

// Graded free module with integer boundary. When augmented, degree -1 holds a
// single augmentation cell and all homology computed from it is reduced.
class ChainComplex {
 public:
  ChainComplex() = default;
  explicit ChainComplex(bool augmented);

  bool augmented() const noexcept { return augmented_; }
  int min_degree() const noexcept { return augmented_ ? -1 : 0; }
  // Highest degree with a slot (may hold zero cells); min_degree()-1 if empty.
  int max_degree() const noexcept { return min_degree() + static_cast<int>(cells_.size()) - 1; }

  std::size_t size(int degree) const;
  std::size_t total_cells() const;

  // Appends a cell in `degree`; the column is sorted and zero entries dropped.
  std::uint32_t add_cell(int degree, SparseColumn boundary);
  // Makes sure degrees up to `degree` exist.
  void reserve_degree(int degree);

  const SparseColumn& boundary(int degree, std::uint32_t index) const;
  std::vector<BoundaryTriple> boundary_triples(int degree) const;

  // Throws ContractViolation naming the first degree where d∘d is nonzero,
  // or where a column refers past the end of the degree below.
  // With modulus > 0 the composite only has to vanish modulo it.
  void check_square_zero(std::int64_t modulus = 0) const;

 private:
  bool augmented_ = false;
  std::vector<std::vector<SparseColumn>> cells_;  // cells_[degree - min_degree()]
};

// Same cells without the augmentation cell (unreduced chains).
ChainComplex drop_augmentation(const ChainComplex& c);

// Cell counts per degree from min_degree() to max_degree().
std::vector<std::size_t> cell_counts(const ChainComplex& c);

}  // namespace chom
