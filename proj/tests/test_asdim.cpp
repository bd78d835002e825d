#include <doctest.h>

#include <boxfdc/asdim.hpp>

#include "generators.hpp"
#include "oracles.hpp"

#include <numeric>

using namespace boxfdc;

namespace {

// Every component of every color class (points joined when closer than r)
// has diameter <= B.
bool coloring_ok(const PointSubset& region, const std::vector<std::size_t>& color, Dist r, Dist B) {
  const auto pts = region.points();
  const auto& sp = region.space();
  const std::size_t n = pts.size();
  std::vector<std::size_t> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  // relabel until stable; n is tiny
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (color[a] == color[b] && sp.dist(pts[a], pts[b]) < r && comp[b] > comp[a]) {
          comp[b] = comp[a];
          changed = true;
        }
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (comp[a] == comp[b] && sp.dist(pts[a], pts[b]) > B) return false;
  return true;
}

// Least number of colors (up to max_colors) admitting a feasible coloring, or
// max_colors + 1 when none does.
std::size_t colors_needed(const PointSubset& region, Dist r, Dist B, std::size_t max_colors) {
  const std::size_t n = region.size();
  for (std::size_t k = 1; k <= max_colors; ++k) {
    std::vector<std::size_t> color(n, 0);
    while (true) {
      if (coloring_ok(region, color, r, B)) return k;
      // next assignment; the first point keeps color 0
      std::size_t i = 1;
      while (i < n && ++color[i] == k) color[i++] = 0;
      if (i >= n) break;
    }
  }
  return max_colors + 1;
}

}  // namespace

TEST_CASE("a region of diameter at most B needs one color") {
  const auto w = oracle::z_window(0, 9);
  const auto res = asdim_at_scale(w.space(), w.all(), 3, 9);
  CHECK(res.n == 0);
  CHECK(res.optimal);
  REQUIRE(res.families.size() == 1);
  CHECK(res.families[0].size() == 1);
}

TEST_CASE("the interval [0,63] at r=5, B=10 needs two colors") {
  const auto w = oracle::z_window(0, 63);
  const auto res = asdim_at_scale(w.space(), w.all(), 5, 10);
  CHECK(res.n == 1);
  CHECK(res.optimal);
  CHECK(res.lower_bound == 1);
  CHECK(asdim_coloring_feasible(w.all(), res.coloring, 5, 10));
  CHECK(coloring_ok(w.all(), res.coloring, 5, 10));
  for (const auto& fam : res.families) {
    CHECK(oracle::r_disjoint(fam.pieces(), 5));
    for (const auto& p : fam.pieces()) CHECK(oracle::diameter_scan(p) <= 10);
  }
}

TEST_CASE("exact search agrees with enumerating all colorings") {
  std::mt19937 rng(31);
  const auto z2 = GroupModel::integer_lattice(2, 64);
  const auto box = GroupWindow::box(z2, {0, 0}, {5, 5});
  for (int t = 0; t < 50; ++t) {
    PointSubset region(box.space());
    const auto want = static_cast<std::size_t>(gen::uniform(rng, 3, 12));
    while (region.size() < want) region.insert(static_cast<PointId>(rng() % box.size()));
    const auto r = static_cast<Dist>(gen::uniform(rng, 1, 4));
    const auto B = static_cast<Dist>(gen::uniform(rng, 1, 6));
    const auto res = asdim_at_scale(box.space(), region, r, B);
    const auto oracle_colors = colors_needed(region, r, B, 3);
    CAPTURE(t);
    CHECK(res.optimal);
    if (oracle_colors <= 3) {
      CHECK(res.n + 1 == oracle_colors);
    } else {
      CHECK(res.n >= 3);
    }
    CHECK(coloring_ok(region, res.coloring, r, B));
  }
}

TEST_CASE("the scale-r dimension grows with r and shrinks with B") {
  std::mt19937 rng(37);
  const auto z2 = GroupModel::integer_lattice(2, 64);
  const auto box = GroupWindow::box(z2, {0, 0}, {5, 5});
  for (int t = 0; t < 10; ++t) {
    PointSubset region(box.space());
    while (region.size() < 14) region.insert(static_cast<PointId>(rng() % box.size()));
    std::size_t prev = 0;
    for (Dist r = 1; r <= 4; ++r) {
      const auto n = asdim_at_scale(box.space(), region, r, 4).n;
      CHECK(n >= prev);
      prev = n;
    }
    prev = 100;
    for (Dist B = 1; B <= 8; ++B) {
      const auto n = asdim_at_scale(box.space(), region, 3, B).n;
      CHECK(n <= prev);
      prev = n;
    }
  }
}

TEST_CASE("9x9 patch of Z^2 at r=3, B=6") {
  const auto z2 = GroupModel::integer_lattice(2, 64);
  const auto box = GroupWindow::box(z2, {0, 0}, {8, 8});
  const auto res = asdim_at_scale(box.space(), box.all(), 3, 6);
  MESSAGE("n = " << res.n << ", optimal " << res.optimal << ", nodes " << res.nodes);
  CHECK(res.optimal);
  CHECK(res.n == 2);
  CHECK(coloring_ok(box.all(), res.coloring, 3, 6));
}

TEST_CASE("greedy mode reports an upper bound only") {
  const auto w = oracle::z_window(0, 63);
  AsdimOptions opts;
  opts.exact = false;
  const auto res = asdim_at_scale(w.space(), w.all(), 5, 10, opts);
  CHECK(!res.optimal);
  CHECK(res.n >= 1);
  CHECK(coloring_ok(w.all(), res.coloring, 5, 10));
}
