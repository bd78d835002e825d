#include <boxfdc/asdim.hpp>
#include <boxfdc/decomposition.hpp>
#include <boxfdc/errors.hpp>

#include <algorithm>
#include <functional>
#include <numeric>

namespace boxfdc {

namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

class Solver {
 public:
  Solver(const PointSubset& region, Dist r, Dist B) : pts_(region.points()), m_(pts_.size()), r_(r), B_(B) {
    const auto& space = region.space();
    d_.resize(m_ * m_);
    for (std::size_t a = 0; a < m_; ++a)
      for (std::size_t b = 0; b < m_; ++b) d_[a * m_ + b] = space.dist(pts_[a], pts_[b]);
    adj_.resize(m_);
    for (std::size_t a = 0; a < m_; ++a)
      for (std::size_t b = 0; b < m_; ++b)
        if (a != b && dist(a, b) < r_) adj_[a].push_back(b);
    order_.resize(m_);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return adj_[a].size() > adj_[b].size(); });
  }

  std::size_t size() const { return m_; }
  Dist dist(std::size_t a, std::size_t b) const { return d_[a * m_ + b]; }

  // Component of v among points already colored like v stays within B.
  bool component_ok(const std::vector<std::size_t>& color, std::size_t v) {
    comp_.clear();
    comp_.push_back(v);
    const auto stamp = next_stamp();
    mark_[v] = stamp;
    for (std::size_t i = 0; i < comp_.size(); ++i) {
      for (auto y : adj_[comp_[i]]) {
        if (mark_[y] == stamp || color[y] != color[v]) continue;
        mark_[y] = stamp;
        for (auto z : comp_)
          if (dist(y, z) > B_) return false;
        comp_.push_back(y);
      }
    }
    return true;
  }

  // With all k colors in use, every uncolored point next to v's component must
  // still accept some color.
  bool neighbors_colorable(std::vector<std::size_t>& color, std::size_t v, std::size_t k) {
    component_ok(color, v);
    std::vector<std::size_t> touched;
    const auto stamp = next_stamp();
    for (auto x : comp_)
      for (auto u : adj_[x])
        if (color[u] == kUnset && mark_[u] != stamp) {
          mark_[u] = stamp;
          touched.push_back(u);
        }
    for (auto u : touched) {
      bool some = false;
      for (std::size_t c = 0; c < k && !some; ++c) {
        color[u] = c;
        some = component_ok(color, u);
      }
      color[u] = kUnset;
      if (!some) return false;
    }
    return true;
  }

  std::vector<std::size_t> greedy() {
    std::vector<std::size_t> color(m_, kUnset);
    std::size_t used = 0;
    for (auto v : order_) {
      for (std::size_t c = 0; c <= used; ++c) {
        color[v] = c;
        if (component_ok(color, v)) break;
      }
      used = std::max(used, color[v] + 1);
    }
    return color;
  }

  enum class Outcome { found, infeasible, budget };

  Outcome search(std::size_t k, std::uint64_t budget, std::vector<std::size_t>& out, std::uint64_t& nodes) {
    std::vector<std::size_t> color(m_, kUnset);
    std::uint64_t count = 0;
    bool over = false;
    std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t depth, std::size_t used) -> bool {
      if (depth == m_) return true;
      if (++count > budget) {
        over = true;
        return false;
      }
      const auto v = order_[depth];
      const std::size_t limit = std::min(k, used + 1);
      for (std::size_t c = 0; c < limit; ++c) {
        color[v] = c;
        const auto now_used = std::max(used, c + 1);
        if (component_ok(color, v) && (now_used < k || neighbors_colorable(color, v, k)) &&
            dfs(depth + 1, now_used))
          return true;
        if (over) break;
      }
      color[v] = kUnset;
      return false;
    };
    const bool found = dfs(0, 0);
    nodes += count;
    if (found) {
      out = color;
      return Outcome::found;
    }
    return over ? Outcome::budget : Outcome::infeasible;
  }

  const std::vector<PointId>& points() const { return pts_; }

 private:
  std::vector<PointId> pts_;
  std::size_t m_;
  Dist r_, B_;
  std::vector<Dist> d_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> comp_;
  std::vector<std::uint64_t> mark_;
  std::uint64_t stamp_ = 0;

  std::uint64_t next_stamp() {
    if (mark_.size() != m_) mark_.assign(m_, 0);
    return ++stamp_;
  }
};

std::size_t colors_used(const std::vector<std::size_t>& coloring) {
  std::size_t k = 0;
  for (auto c : coloring) k = std::max(k, c + 1);
  return k;
}

}  // namespace

bool asdim_coloring_feasible(const PointSubset& region, const std::vector<std::size_t>& coloring, Dist r, Dist B) {
  const auto pts = region.points();
  if (coloring.size() != pts.size()) throw PreconditionError("coloring size does not match the region");
  const std::size_t k = colors_used(coloring);
  for (std::size_t c = 0; c < k; ++c) {
    PointSubset cls(region.carrier());
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (coloring[i] == c) cls.insert(pts[i]);
    for (const auto& comp : r_components(cls, r))
      if (diameter(comp) > B) return false;
  }
  return true;
}

AsdimResult asdim_at_scale(const SpacePtr& space, const PointSubset& region, Dist r, Dist B,
                           const AsdimOptions& options) {
  if (region.carrier() != space) throw CarrierMismatch();
  if (r == 0) throw PreconditionError("asdim scale r must be positive");
  AsdimResult result;
  Solver solver(region, r, B);
  if (solver.size() == 0) {
    result.optimal = true;
    return result;
  }

  std::vector<std::size_t> best = solver.greedy();
  std::size_t best_k = colors_used(best);
  std::size_t lower_k = 1;
  if (options.exact && solver.size() <= options.max_exact_points) {
    for (std::size_t k = 1; k < best_k && k <= options.max_colors; ++k) {
      std::vector<std::size_t> found;
      const auto outcome = solver.search(k, options.node_budget, found, result.nodes);
      if (outcome == Solver::Outcome::found) {
        best = std::move(found);
        best_k = colors_used(best);
        break;
      }
      if (outcome == Solver::Outcome::budget) {
        result.budget_exceeded = true;
        break;
      }
      lower_k = k + 1;
    }
  }
  result.n = best_k - 1;
  result.lower_bound = lower_k - 1;
  result.optimal = result.lower_bound == result.n;
  result.coloring = best;

  const auto& pts = solver.points();
  for (std::size_t c = 0; c < best_k; ++c) {
    PointSubset cls(space);
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (best[i] == c) cls.insert(pts[i]);
    result.families.emplace_back(space, r_components(cls, r));
  }
  return result;
}

}  // namespace boxfdc
