#pragma once

#include <boxfdc/metric.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace boxfdc {

struct AsdimOptions {
  bool exact = true;
  std::size_t max_exact_points = 400;     // larger regions go straight to greedy
  std::uint64_t node_budget = 5'000'000;  // search nodes per color count
  std::size_t max_colors = 8;
};

// Minimal n with the region covered by n+1 families, each r-disjoint with
// pieces of diameter <= B. A coloring of the points is feasible exactly when
// every component of a color class (joining points at distance < r) has
// diameter <= B; the pieces are those components.
struct AsdimResult {
  std::size_t n = 0;                   // colors used by the witness minus one
  bool optimal = false;                // true when n is proven minimal
  std::size_t lower_bound = 0;         // n is at least this
  bool budget_exceeded = false;
  std::uint64_t nodes = 0;
  std::vector<std::size_t> coloring;   // per region point, in region order
  std::vector<SubsetFamily> families;  // witness cover, one family per color
};

AsdimResult asdim_at_scale(const SpacePtr& space, const PointSubset& region, Dist r, Dist B,
                           const AsdimOptions& options = {});

// True when the coloring (indexed like region.points()) is feasible.
bool asdim_coloring_feasible(const PointSubset& region, const std::vector<std::size_t>& coloring, Dist r, Dist B);

}  // namespace boxfdc
