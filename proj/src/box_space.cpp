#include <boxfdc/box_space.hpp>
#include <boxfdc/errors.hpp>

#include <algorithm>
#include <set>

namespace boxfdc {

NormalChain::NormalChain(GroupModel parent, std::vector<Subgroup> subgroups, std::int64_t normality_radius)
    : parent_(std::move(parent)), subgroups_(std::move(subgroups)) {
  if (subgroups_.empty()) throw PreconditionError("a chain needs at least one subgroup");
  for (std::size_t i = 0; i < subgroups_.size(); ++i) {
    const auto& n = subgroups_[i];
    if (!n.parent().same_as(parent_)) throw PreconditionError("chain subgroup belongs to another group");
    if (!n.has_finite_index())
      throw PreconditionError("chain subgroup N_" + std::to_string(i + 1) + " has infinite index");
    if (auto bad = n.normality_violation(normality_radius))
      throw PreconditionError("chain subgroup N_" + std::to_string(i + 1) + " is not normal: witness " +
                              parent_.format(bad->first) + ", " + parent_.format(bad->second));
    if (i == 0) continue;
    const auto& prev = subgroups_[i - 1];
    // nesting is exact: check a spanning set of N_{i+1}
    const auto& span = n.lattice() ? n.lattice()->basis() : n.elements();
    for (const auto& x : span)
      if (!prev.contains(x))
        throw PreconditionError("chain is not nested: " + parent_.format(x) + " lies in N_" + std::to_string(i + 1) +
                                " but not in N_" + std::to_string(i));
  }
  quotients_ = std::make_shared<Cache>();
  quotients_->slots.resize(subgroups_.size());
}

NormalChain NormalChain::powers(const GroupModel& lattice, std::int64_t base, std::size_t depth) {
  if (lattice.kind() != GroupKind::integer_lattice) throw PreconditionError("power chains need an integer lattice");
  if (base < 2) throw PreconditionError("power chains need base >= 2");
  std::vector<Subgroup> subs;
  std::int64_t scale = 1;
  for (std::size_t i = 1; i <= depth; ++i) {
    scale *= base;
    std::vector<Element> basis;
    for (std::size_t a = 0; a < lattice.rank(); ++a) {
      Element e(lattice.rank(), 0);
      e[a] = scale;
      basis.push_back(e);
    }
    subs.push_back(Subgroup::lattice(lattice, basis));
  }
  return NormalChain(lattice, std::move(subs));
}

const Subgroup& NormalChain::subgroup(std::size_t i) const {
  if (i < 1 || i > subgroups_.size()) throw PreconditionError("chain index out of range");
  return subgroups_[i - 1];
}

const QuotientModel& NormalChain::quotient(std::size_t i) const {
  const auto& n = subgroup(i);
  std::lock_guard guard(quotients_->lock);
  auto& slot = quotients_->slots[i - 1];
  if (!slot) slot.emplace(parent_, n, 0);
  return *slot;
}

// ---------------------------------------------------------------------------

std::size_t BoxSpace::piece_of(PointId p) const {
  auto it = std::upper_bound(piece_start.begin(), piece_start.end(), p);
  return static_cast<std::size_t>(it - piece_start.begin());
}

PointId BoxSpace::point(std::size_t piece, std::size_t index) const {
  if (piece < 1 || piece > pieces() || index >= piece_size[piece - 1]) throw PreconditionError("no such box point");
  return piece_start[piece - 1] + index;
}

PointSubset BoxSpace::piece(std::size_t i) const {
  PointSubset s(space);
  for (std::size_t k = 0; k < piece_size.at(i - 1); ++k) s.insert(piece_start[i - 1] + k);
  return s;
}

Dist BoxSpace::cross_distance(std::size_t i, std::size_t j) const {
  return diameters.at(i - 1) + diameters.at(j - 1) + static_cast<Dist>(i + j);
}

namespace {

struct PieceData {
  std::vector<std::size_t> cosets;  // coset indices of the quotient
  const QuotientModel* q;
  Dist diameter;
};

BoxSpace assemble(const std::vector<PieceData>& pieces) {
  BoxSpace box;
  std::size_t total = 0;
  for (const auto& p : pieces) {
    box.piece_start.push_back(total);
    box.piece_size.push_back(p.cosets.size());
    box.diameters.push_back(p.diameter);
    total += p.cosets.size();
  }
  std::vector<Dist> matrix(total * total, 0);
  std::vector<std::string> labels(total);
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& pi = pieces[i];
    const auto& space = *pi.q->window().space();
    for (std::size_t a = 0; a < pi.cosets.size(); ++a) {
      const auto pa = box.piece_start[i] + a;
      labels[pa] = std::to_string(i + 1) + ":" + space.label(pi.cosets[a]);
      for (std::size_t j = 0; j < pieces.size(); ++j) {
        const auto& pj = pieces[j];
        for (std::size_t b = 0; b < pj.cosets.size(); ++b) {
          const auto pb = box.piece_start[j] + b;
          matrix[pa * total + pb] =
              i == j ? space.dist(pi.cosets[a], pi.cosets[b]) : box.cross_distance(i + 1, j + 1);
        }
      }
    }
  }
  box.space = make_space(std::move(labels), std::move(matrix), Validation::check);
  return box;
}

}  // namespace

BoxSpace build_box(const NormalChain& chain, std::size_t k) {
  if (k < 1 || k > chain.size()) throw PreconditionError("box needs 1 <= k <= chain length");
  std::vector<PieceData> pieces;
  for (std::size_t i = 1; i <= k; ++i) {
    const auto& q = chain.quotient(i);
    std::vector<std::size_t> all(q.index());
    for (std::size_t c = 0; c < all.size(); ++c) all[c] = c;
    pieces.push_back({all, &q, static_cast<Dist>(q.diameter())});
  }
  return assemble(pieces);
}

BoxSpace build_ball_union(const NormalChain& chain, const std::vector<std::int64_t>& radii) {
  if (radii.empty() || radii.size() > chain.size()) throw PreconditionError("need 1..chain length radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] < 1) throw PreconditionError("ball radii must be positive");
    if (i > 0 && radii[i] <= radii[i - 1]) throw PreconditionError("ball radii must increase strictly");
  }
  std::vector<PieceData> pieces;
  for (std::size_t i = 1; i <= radii.size(); ++i) {
    const auto& q = chain.quotient(i);
    auto ball = q.ball(radii[i - 1]);
    const auto& space = *q.window().space();
    Dist diam = 0;
    for (auto a : ball)
      for (auto b : ball) diam = std::max(diam, space.dist(a, b));
    pieces.push_back({std::move(ball), &q, diam});
  }
  return assemble(pieces);
}

std::int64_t injectivity_radius(const NormalChain& chain, std::size_t i, std::int64_t r_max) {
  if (r_max < 1) throw PreconditionError("r_max must be positive");
  const auto& q = chain.quotient(i);
  const auto& g = chain.parent();
  std::int64_t passing = 0;
  for (std::int64_t r = 1; r <= r_max; ++r) {
    const auto ball = g.ball(r);
    std::vector<std::size_t> image;
    for (const auto& x : ball) image.push_back(q.coset_index(x));
    bool ok = true;
    for (std::size_t a = 0; a < ball.size() && ok; ++a) {
      const auto inv = g.invert(ball[a]);
      for (std::size_t b = a + 1; b < ball.size() && ok; ++b) {
        const auto diff = g.multiply(inv, ball[b]);
        ok = image[a] != image[b] && q.length(diff) == g.word_length(diff);
      }
    }
    if (ok) {
      std::set<std::size_t> got(image.begin(), image.end());
      const auto qb = q.ball(r);
      ok = got == std::set<std::size_t>(qb.begin(), qb.end());
    }
    if (!ok) break;
    passing = r;
  }
  return passing;
}

std::optional<std::size_t> minimal_injective_index(const NormalChain& chain, std::int64_t r) {
  for (std::size_t i = 1; i <= chain.size(); ++i)
    if (injectivity_radius(chain, i, r) >= r) return i;
  return std::nullopt;
}

}  // namespace boxfdc
