#pragma once

#include <boxfdc/group.hpp>

#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace boxfdc {

// Nested normal subgroups N_1 >= N_2 >= ... >= N_k of finite index.
// Indices are 1-based throughout, matching the +i+j term of the box metric.
class NormalChain {
 public:
  NormalChain(GroupModel parent, std::vector<Subgroup> subgroups, std::int64_t normality_radius = 4);
  // N_i = base^i Z^n for i = 1..depth.
  static NormalChain powers(const GroupModel& lattice, std::int64_t base, std::size_t depth);

  const GroupModel& parent() const { return parent_; }
  std::size_t size() const { return subgroups_.size(); }
  const Subgroup& subgroup(std::size_t i) const;
  // G/N_i, built on first use.
  const QuotientModel& quotient(std::size_t i) const;

 private:
  GroupModel parent_;
  std::vector<Subgroup> subgroups_;
  struct Cache {
    std::mutex lock;
    std::vector<std::optional<QuotientModel>> slots;
  };
  std::shared_ptr<Cache> quotients_;
};

// Points are tagged (piece, coset index); pieces are contiguous blocks.
struct BoxSpace {
  SpacePtr space;
  std::vector<std::size_t> piece_start;  // piece i (1-based) starts at piece_start[i-1]
  std::vector<std::size_t> piece_size;
  std::vector<Dist> diameters;

  std::size_t pieces() const { return piece_size.size(); }
  std::size_t piece_of(PointId p) const;
  PointId point(std::size_t piece, std::size_t index) const;
  PointSubset piece(std::size_t i) const;
  Dist cross_distance(std::size_t i, std::size_t j) const;
};

// Coarse disjoint union of G/N_1..G/N_k: quotient metric inside a piece,
// diam_i + diam_j + i + j across pieces. Validates the metric axioms.
BoxSpace build_box(const NormalChain& chain, std::size_t k);

// Largest R <= r_max for which the projection to G/N_i is an isometric
// bijection from B_G(1,R) onto B_{G/N_i}(1,R), by pairwise comparison.
std::int64_t injectivity_radius(const NormalChain& chain, std::size_t i, std::int64_t r_max);

// Least i <= chain size with injectivity radius >= r, if any.
std::optional<std::size_t> minimal_injective_index(const NormalChain& chain, std::int64_t r);

// Coarse disjoint union of the balls B_{G/N_i}(1, r_i), using the same cross
// formula with ball diameters in place of quotient diameters.
BoxSpace build_ball_union(const NormalChain& chain, const std::vector<std::int64_t>& radii);

}  // namespace boxfdc
