#include <boxfdc/decomposition.hpp>
#include <boxfdc/errors.hpp>

#include <algorithm>

namespace boxfdc {

namespace {

void require_increasing(const std::vector<Dist>& bounds, const char* what) {
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    if (bounds[k] == 0) throw PreconditionError(std::string(what) + " bounds must be positive");
    if (k > 0 && bounds[k] <= bounds[k - 1])
      throw PreconditionError(std::string(what) + " bounds must increase strictly (stage " + std::to_string(k + 1) +
                              ")");
  }
}

void require_passing(const SequenceVerdict& v, const char* what) {
  for (const auto& s : v.stages)
    if (!s.passed)
      throw PreconditionError(std::string("input fails ") + what + " verification at stage " +
                              std::to_string(s.stage) + ": " + s.detail);
}

// A piece together with its own decomposition tree.
struct Node {
  PointSubset set;
  int color = 0;
  std::vector<Node> kids;
};

Node to_tree(const DecompositionSequence& seq) {
  Node root{seq.start, 0, {}};
  std::vector<Node*> level{&root};
  for (const auto& stage : seq.stages) {
    std::vector<Node*> next;
    for (std::size_t j = 0; j < stage.parts.size(); ++j) {
      auto* node = level[j];
      for (int c = 0; c < 2; ++c)
        for (const auto& p : stage.parts[j].color(c).pieces()) node->kids.push_back(Node{p, c, {}});
    }
    for (auto* node : level)
      for (auto& kid : node->kids) next.push_back(&kid);
    level = std::move(next);
  }
  return root;
}

DecompositionSequence from_tree(const Node& root, const std::vector<Dist>& bounds) {
  DecompositionSequence seq(root.set);
  std::vector<const Node*> level{&root};
  for (auto bound : bounds) {
    DecompositionStage stage{bound, {}};
    std::vector<const Node*> next;
    for (const auto* node : level) {
      Decomposition part(node->set);
      for (int c = 0; c < 2; ++c)
        for (const auto& kid : node->kids)
          if (kid.color == c) {
            part.add(c, kid.set);
            next.push_back(&kid);
          }
      stage.parts.push_back(std::move(part));
    }
    seq.stages.push_back(std::move(stage));
    level = std::move(next);
  }
  return seq;
}

void map_inner(Node& n, Dist radius, const PointSubset& within) {
  n.set = inner_neighborhood(n.set, radius, within);
  for (auto& kid : n.kids) map_inner(kid, radius, within);
}

// `node.kids` cover node.set with Lebesgue number >= bounds[0], their kids
// cover them with Lebesgue number >= bounds[1], and so on.
void full_to_ordinary_rec(Node& node, std::vector<Dist> bounds) {
  if (bounds.empty() || node.kids.empty()) return;
  const Dist inner_r = bounds.front();
  const PointSubset region = node.set;
  std::vector<Dist> rest(bounds.begin() + 1, bounds.end());
  for (auto& r : rest) r -= inner_r;
  for (auto& kid : node.kids) {
    // every descendant Q of the kid becomes N_{-R}(Q) inside the current region
    map_inner(kid, inner_r, region);
    full_to_ordinary_rec(kid, rest);
  }
}

}  // namespace

DecompositionSequence ordinary_to_full(const DecompositionSequence& seq) {
  const auto gaps = seq.bounds();
  require_increasing(gaps, "ordinary");
  require_passing(verify_ordinary_sequence(seq), "ordinary");

  DecompositionSequence out(seq.start);
  std::vector<PointSubset> enlarged{seq.start};  // aligned with seq.pieces_after(k - 1)
  for (std::size_t k = 0; k < seq.stages.size(); ++k) {
    const Dist radius = std::max<Dist>(1, gaps[k] / 2);
    DecompositionStage stage{gaps[k] / 4, {}};
    std::vector<PointSubset> next;
    for (std::size_t j = 0; j < seq.stages[k].parts.size(); ++j) {
      const auto& part = seq.stages[k].parts[j];
      const auto& parent = enlarged[j];
      Decomposition full(parent);
      for (int c = 0; c < 2; ++c)
        for (const auto& z : part.color(c).pieces()) {
          auto grown = outer_neighborhood(z, radius, parent);
          full.add(c, grown);
        }
      for (int c = 0; c < 2; ++c)
        for (const auto& p : full.color(c).pieces()) next.push_back(p);
      stage.parts.push_back(std::move(full));
    }
    out.stages.push_back(std::move(stage));
    enlarged = std::move(next);
  }
  return out;
}

DecompositionSequence full_to_ordinary(const DecompositionSequence& seq) {
  const auto bounds = seq.bounds();
  require_increasing(bounds, "full");
  require_passing(verify_full_sequence(seq), "full");

  Node root = to_tree(seq);
  full_to_ordinary_rec(root, bounds);
  std::vector<Dist> gaps;
  for (std::size_t k = 0; k < bounds.size(); ++k) gaps.push_back(k == 0 ? bounds[0] : bounds[k] - bounds[k - 1]);
  return from_tree(root, gaps);
}

}  // namespace boxfdc
