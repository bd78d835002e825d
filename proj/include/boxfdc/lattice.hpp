#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace boxfdc {

using IntVector = std::vector<std::int64_t>;

// Subgroup of Z^n spanned by integer vectors, kept in row Hermite normal
// form: echelon rows with positive pivots and entries above each pivot
// reduced into [0, pivot).
class IntegerLattice {
 public:
  IntegerLattice(std::size_t dim, std::vector<IntVector> generators);

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }
  bool full_rank() const { return rows_.size() == dim_; }
  const std::vector<IntVector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivot_columns() const { return pivots_; }

  // Canonical representative of v + L. Two vectors share a coset iff their
  // reductions agree.
  IntVector reduce(IntVector v) const;
  bool contains(const IntVector& v) const;

  // |Z^n / L|; throws when L does not have full rank.
  std::uint64_t index() const;
  // All canonical residues, lexicographically sorted (full rank only).
  std::vector<IntVector> residues() const;

 private:
  std::size_t dim_;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace boxfdc
