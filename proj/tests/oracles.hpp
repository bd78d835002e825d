#pragma once

// Brute-force reference computations. These deliberately avoid the library's
// algorithms: everything is a direct scan over points, pairs or cosets.

#include <boxfdc/decomposition.hpp>
#include <boxfdc/group.hpp>
#include <boxfdc/metric.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using namespace boxfdc;

inline const GroupModel& z() {
  static const GroupModel g = GroupModel::integer_lattice(1, 512);
  return g;
}

inline GroupWindow z_window(std::int64_t lo, std::int64_t hi) { return GroupWindow::box(z(), {lo}, {hi}); }
inline GroupWindow z_window(const GroupModel& g, std::int64_t lo, std::int64_t hi) {
  return GroupWindow::box(g, {lo}, {hi});
}

inline PointSubset interval(const GroupWindow& w, std::int64_t lo, std::int64_t hi) {
  PointSubset s(w.space());
  for (auto x = lo; x <= hi; ++x) s.insert(w.point_of({x}));
  return s;
}

inline PointSubset set_of(const GroupWindow& w, std::initializer_list<std::int64_t> xs) {
  PointSubset s(w.space());
  for (auto x : xs) s.insert(w.point_of({x}));
  return s;
}

inline std::vector<std::int64_t> values(const GroupWindow& w, const PointSubset& s) {
  std::vector<std::int64_t> out;
  for (auto p : s.points()) out.push_back(w.element_of(p)[0]);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::int64_t> range(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (auto x = lo; x <= hi; ++x) out.push_back(x);
  return out;
}

inline Dist diameter_scan(const PointSubset& s) {
  Dist d = 0;
  for (auto a : s.points())
    for (auto b : s.points()) d = std::max(d, s.space().dist(a, b));
  return d;
}

inline std::int64_t l1(const Element& e) {
  std::int64_t s = 0;
  for (auto x : e) s += std::llabs(x);
  return s;
}

// Smallest |x + k m| over integer k: the length in Z/mZ with generator 1.
inline std::int64_t cyclic_length(std::int64_t x, std::int64_t m) {
  const auto r = ((x % m) + m) % m;
  return std::min(r, m - r);
}

// Smallest d such that some pair of points from different pieces is at d;
// pieces with identical member sets are treated as one.
inline bool r_disjoint(const std::vector<PointSubset>& pieces, Dist r) {
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (pieces[i] == pieces[j]) continue;
      for (auto a : pieces[i].points())
        for (auto b : pieces[j].points())
          if (pieces[i].space().dist(a, b) < r) return false;
    }
  return true;
}

// Largest r (capped at diam+1) such that for every region point x the open ball
// of radius r around x, intersected with the region, fits in one piece.
inline Dist lebesgue(const std::vector<PointSubset>& pieces, const PointSubset& region) {
  const auto& sp = region.space();
  const Dist cap = diameter_scan(region) + 1;
  Dist best = 0;
  for (Dist r = 1; r <= cap; ++r) {
    bool ok = true;
    for (auto x : region.points()) {
      bool fits = false;
      for (const auto& p : pieces) {
        bool inside = true;
        for (auto y : region.points())
          if (sp.dist(x, y) < r && !p.contains(y)) {
            inside = false;
            break;
          }
        if (inside) {
          fits = true;
          break;
        }
      }
      if (!fits) {
        ok = false;
        break;
      }
    }
    if (!ok) break;
    best = r;
  }
  return best;
}

inline bool covers(const std::vector<PointSubset>& pieces, const PointSubset& region) {
  for (auto x : region.points()) {
    bool hit = false;
    for (const auto& p : pieces) hit = hit || p.contains(x);
    if (!hit) return false;
  }
  return true;
}

inline std::vector<PointSubset> all_pieces(const Decomposition& d) {
  std::vector<PointSubset> out;
  for (int c = 0; c < 2; ++c)
    for (const auto& p : d.color(c).pieces()) out.push_back(p);
  return out;
}

// Ordinary decomposition check by direct pair scans.
inline bool ordinary_ok(const Decomposition& d, Dist r) {
  if (!covers(all_pieces(d), d.region())) return false;
  for (const auto& p : all_pieces(d))
    if (!p.is_subset_of(d.region())) return false;
  return r_disjoint(d.color0().pieces(), r) && r_disjoint(d.color1().pieces(), r);
}

// Minimum word length over a coset g + N of a sublattice, by scanning the
// translates g + sum c_i b_i with |c_i| <= reach.
inline std::int64_t coset_min_l1(const Element& g, const std::vector<Element>& basis, std::int64_t reach) {
  const auto n = g.size();
  std::int64_t best = l1(g);
  std::vector<std::int64_t> c(basis.size(), -reach);
  while (true) {
    Element e = g;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t a = 0; a < n; ++a) e[a] += c[i] * basis[i][a];
    best = std::min(best, l1(e));
    std::size_t i = 0;
    while (i < c.size() && c[i] == reach) c[i++] = -reach;
    if (i == c.size()) break;
    ++c[i];
  }
  return best;
}

// Word lengths in a finite group by plain BFS over an explicit element list.
inline std::vector<std::int64_t> bfs_lengths(const GroupModel& g) {
  const auto& el = g.elements();
  std::vector<std::int64_t> len(el.size(), -1);
  std::vector<std::size_t> queue{g.index_of(g.identity())};
  len[queue[0]] = 0;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& s : g.generators()) {
      const auto j = g.index_of(g.multiply(el[queue[i]], s));
      if (len[j] < 0) {
        len[j] = len[queue[i]] + 1;
        queue.push_back(j);
      }
    }
  return len;
}

}  // namespace oracle
