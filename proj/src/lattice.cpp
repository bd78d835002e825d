#include <boxfdc/errors.hpp>
#include <boxfdc/lattice.hpp>

#include <algorithm>
#include <numeric>

namespace boxfdc {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void axpy(IntVector& y, std::int64_t a, const IntVector& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

IntegerLattice::IntegerLattice(std::size_t dim, std::vector<IntVector> generators) : dim_(dim) {
  for (const auto& g : generators)
    if (g.size() != dim) throw PreconditionError("lattice generator has the wrong dimension");

  std::vector<IntVector> work = std::move(generators);
  std::size_t row = 0;
  for (std::size_t col = 0; col < dim && row < work.size(); ++col) {
    // Euclid on column `col` over rows [row, end) until one nonzero entry remains.
    while (true) {
      std::size_t best = work.size();
      for (std::size_t i = row; i < work.size(); ++i) {
        if (work[i][col] == 0) continue;
        if (best == work.size() || std::llabs(work[i][col]) < std::llabs(work[best][col])) best = i;
      }
      if (best == work.size()) break;
      std::swap(work[row], work[best]);
      bool reduced_other = false;
      for (std::size_t i = row + 1; i < work.size(); ++i) {
        if (work[i][col] == 0) continue;
        axpy(work[i], -floor_div(work[i][col], work[row][col]), work[row]);
        reduced_other = true;
      }
      if (!reduced_other) break;
    }
    if (work[row][col] == 0) continue;
    if (work[row][col] < 0)
      for (auto& x : work[row]) x = -x;
    pivots_.push_back(col);
    ++row;
  }
  work.resize(row);
  rows_ = std::move(work);

  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t c = pivots_[i];
    for (std::size_t k = 0; k < i; ++k) axpy(rows_[k], -floor_div(rows_[k][c], rows_[i][c]), rows_[i]);
  }
}

IntVector IntegerLattice::reduce(IntVector v) const {
  if (v.size() != dim_) throw PreconditionError("vector has the wrong dimension");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const std::size_t c = pivots_[i];
    axpy(v, -floor_div(v[c], rows_[i][c]), rows_[i]);
  }
  return v;
}

bool IntegerLattice::contains(const IntVector& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
}

std::uint64_t IntegerLattice::index() const {
  if (!full_rank()) throw PreconditionError("sublattice has infinite index");
  std::uint64_t idx = 1;
  for (std::size_t i = 0; i < rows_.size(); ++i) idx *= static_cast<std::uint64_t>(rows_[i][pivots_[i]]);
  return idx;
}

std::vector<IntVector> IntegerLattice::residues() const {
  const auto total = index();
  std::vector<IntVector> out;
  out.reserve(total);
  IntVector cur(dim_, 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    out.push_back(cur);
    for (std::size_t i = dim_; i-- > 0;) {
      if (++cur[i] < rows_[i][i]) break;
      cur[i] = 0;
    }
  }
  return out;
}

}  // namespace boxfdc
