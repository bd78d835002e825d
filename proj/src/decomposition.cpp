#include <boxfdc/decomposition.hpp>
#include <boxfdc/errors.hpp>

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace boxfdc {

Decomposition::Decomposition(PointSubset region)
    : region_(std::move(region)), color0_(region_.carrier()), color1_(region_.carrier()) {}

Decomposition::Decomposition(PointSubset region, SubsetFamily color0, SubsetFamily color1)
    : region_(std::move(region)), color0_(std::move(color0)), color1_(std::move(color1)) {
  if (color0_.carrier() != region_.carrier() || color1_.carrier() != region_.carrier()) throw CarrierMismatch();
}

void Decomposition::add(int c, PointSubset piece) {
  if (c == 0)
    color0_.add(std::move(piece));
  else if (c == 1)
    color1_.add(std::move(piece));
  else
    throw PreconditionError("decompositions have colors 0 and 1");
}

SubsetFamily Decomposition::pooled() const {
  SubsetFamily all(carrier());
  for (const auto& p : color0_.pieces()) all.add(p);
  for (const auto& p : color1_.pieces()) all.add(p);
  return all;
}

Dist Decomposition::max_diameter() const {
  Dist best = 0;
  for (int c = 0; c < 2; ++c)
    for (const auto& p : color(c).pieces()) best = std::max(best, diameter(p));
  return best;
}

bool same_pieces(const Decomposition& a, const Decomposition& b) {
  if (a.carrier() != b.carrier() || !(a.region() == b.region())) return false;
  for (int c = 0; c < 2; ++c) {
    std::set<boost::dynamic_bitset<>> sa, sb;
    for (const auto& p : a.color(c).pieces()) sa.insert(p.bits());
    for (const auto& p : b.color(c).pieces()) sb.insert(p.bits());
    if (sa != sb) return false;
  }
  return true;
}

namespace {

std::string piece_name(const PieceRef& r) {
  return "color " + std::to_string(r.color) + " piece " + std::to_string(r.index);
}

std::vector<PointId> uncovered_points(const Decomposition& d) {
  return (d.region() - d.pooled().union_of()).points();
}

std::optional<PieceRef> piece_outside(const Decomposition& d) {
  for (int c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < d.color(c).size(); ++i)
      if (!d.color(c)[i].is_subset_of(d.region())) return PieceRef{c, i};
  return std::nullopt;
}

}  // namespace

std::string OrdinaryVerdict::describe() const {
  if (passed) return "ordinary decomposition verified";
  std::ostringstream os;
  if (!uncovered.empty()) os << uncovered.size() << " region point(s) uncovered; ";
  if (piece_outside_region) os << piece_name(*piece_outside_region) << " leaves the region; ";
  if (witness)
    os << "color " << *witness_color << " pieces " << witness->first << " and " << witness->second
       << " are at distance " << witness->distance;
  return os.str();
}

OrdinaryVerdict verify_ordinary(const Decomposition& d, Dist r) {
  OrdinaryVerdict v;
  v.uncovered = uncovered_points(d);
  v.piece_outside_region = piece_outside(d);
  for (int c = 0; c < 2 && !v.witness; ++c) {
    auto verdict = is_r_disjoint(d.color(c), r);
    if (!verdict) {
      v.witness_color = c;
      v.witness = verdict.witness;
    }
  }
  v.passed = v.uncovered.empty() && !v.piece_outside_region && !v.witness;
  return v;
}

std::string FullVerdict::describe() const {
  std::ostringstream os;
  if (passed) {
    os << "full decomposition verified, Lebesgue number " << lebesgue;
    if (unbounded) os << " (one piece holds the region)";
    return os.str();
  }
  if (!uncovered.empty()) os << uncovered.size() << " region point(s) uncovered; ";
  if (piece_outside_region) os << piece_name(*piece_outside_region) << " leaves the region; ";
  if (overlap) os << piece_name(overlap->first) << " meets " << piece_name(overlap->second) << "; ";
  if (uncovered.empty()) os << "Lebesgue number " << lebesgue;
  return os.str();
}

FullVerdict verify_full(const Decomposition& d, Dist R) {
  FullVerdict v;
  v.uncovered = uncovered_points(d);
  v.piece_outside_region = piece_outside(d);
  for (int c = 0; c < 2 && !v.overlap; ++c) {
    const auto& fam = d.color(c);
    for (std::size_t i = 0; i < fam.size() && !v.overlap; ++i)
      for (std::size_t j = i + 1; j < fam.size() && !v.overlap; ++j)
        if (!(fam[i] == fam[j]) && fam[i].intersects(fam[j])) v.overlap = {PieceRef{c, i}, PieceRef{c, j}};
  }
  if (v.uncovered.empty()) {
    const auto pooled = d.pooled();
    v.lebesgue = lebesgue_number(pooled, d.region());
    for (const auto& piece : pooled.pieces())
      if ((d.region() - piece).empty()) v.unbounded = true;
  }
  v.passed = v.uncovered.empty() && !v.piece_outside_region && !v.overlap && (v.lebesgue >= R || v.unbounded);
  return v;
}

// ---------------------------------------------------------------------------

std::string InvarianceVerdict::describe() const {
  if (passed) return "invariant under " + std::to_string(translations_checked) + " translation(s)";
  return piece_name(*piece) + " has a translate by " + format_element(*translation) + " that is not a piece";
}

std::vector<Element> window_translations(const InvarianceSpec& spec) {
  const auto& g = spec.window.group();
  const auto& el = spec.window.elements();
  std::set<Element> hs;
  for (const auto& a : el) {
    const auto inv = g.invert(a);
    for (const auto& b : el) {
      auto h = g.multiply(inv, b);
      if (!hs.count(h) && spec.acting.contains(h)) hs.insert(std::move(h));
    }
  }
  return {hs.begin(), hs.end()};
}

InvarianceVerdict verify_invariance(const Decomposition& d, const InvarianceSpec& spec) {
  using Bits = boost::dynamic_bitset<>;
  if (d.carrier() != spec.window.space()) throw CarrierMismatch();
  if (!spec.acting.parent().same_as(spec.window.group()))
    throw PreconditionError("acting subgroup belongs to another group");
  const auto& g = spec.window.group();
  const auto& el = spec.window.elements();
  const std::size_t n = el.size();
  const auto hs = window_translations(spec);

  // per translation: where each point goes (n if it leaves), and the mask W*h
  std::vector<std::vector<std::size_t>> moves(hs.size(), std::vector<std::size_t>(n, n));
  std::vector<Bits> masks(hs.size(), Bits(n));
  for (std::size_t t = 0; t < hs.size(); ++t) {
    for (std::size_t p = 0; p < n; ++p) {
      if (auto q = spec.window.find(g.multiply(el[p], hs[t]))) {
        moves[t][p] = *q;
        masks[t].set(*q);
      }
    }
  }

  InvarianceVerdict v;
  v.translations_checked = hs.size();
  for (int c = 0; c < 2; ++c) {
    const auto& fam = d.color(c);
    std::vector<std::set<Bits>> seen(hs.size());
    for (std::size_t t = 0; t < hs.size(); ++t)
      for (const auto& piece : fam.pieces()) seen[t].insert(piece.bits() & masks[t]);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      const auto pts = fam[i].points();
      for (std::size_t t = 0; t < hs.size(); ++t) {
        Bits moved(n);
        for (auto p : pts)
          if (moves[t][p] < n) moved.set(moves[t][p]);
        if (moved.none() || seen[t].count(moved)) continue;
        v.passed = false;
        v.piece = PieceRef{c, i};
        v.translation = hs[t];
        return v;
      }
    }
  }
  return v;
}

// ---------------------------------------------------------------------------

std::vector<PointSubset> DecompositionSequence::pieces_after(std::size_t stage) const {
  if (stage == 0) return {start};
  if (stage > stages.size()) throw PreconditionError("sequence has no stage " + std::to_string(stage));
  std::vector<PointSubset> out;
  for (const auto& part : stages[stage - 1].parts)
    for (int c = 0; c < 2; ++c)
      for (const auto& p : part.color(c).pieces()) out.push_back(p);
  return out;
}

std::vector<Dist> DecompositionSequence::bounds() const {
  std::vector<Dist> out;
  for (const auto& s : stages) out.push_back(s.bound);
  return out;
}

std::string SequenceVerdict::describe() const {
  std::ostringstream os;
  for (const auto& s : stages) {
    os << "stage " << s.stage << " (bound " << s.bound << "): " << (s.passed ? "pass" : "FAIL");
    if (!s.detail.empty()) os << " - " << s.detail;
    os << "\n";
  }
  return os.str();
}

void check_sequence_shape(const DecompositionSequence& seq) {
  for (std::size_t k = 1; k <= seq.stages.size(); ++k) {
    const auto prev = seq.pieces_after(k - 1);
    const auto& parts = seq.stages[k - 1].parts;
    if (parts.size() != prev.size())
      throw PreconditionError("stage " + std::to_string(k) + " has " + std::to_string(parts.size()) +
                              " parts for " + std::to_string(prev.size()) + " pieces");
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (!(parts[j].region() == prev[j]))
        throw PreconditionError("stage " + std::to_string(k) + " part " + std::to_string(j) +
                                " does not decompose the matching piece");
  }
}

namespace {

template <class Check>
SequenceVerdict verify_stages(const DecompositionSequence& seq, const std::vector<Dist>& bounds, Check check) {
  check_sequence_shape(seq);
  if (bounds.size() != seq.stages.size()) throw PreconditionError("one bound per stage is required");
  SequenceVerdict out;
  for (std::size_t k = 0; k < seq.stages.size(); ++k) {
    StageVerdict sv;
    sv.stage = k + 1;
    sv.bound = bounds[k];
    sv.achieved = std::numeric_limits<Dist>::max();
    for (std::size_t j = 0; j < seq.stages[k].parts.size(); ++j) {
      check(seq.stages[k].parts[j], bounds[k], sv, j);
    }
    if (sv.achieved == std::numeric_limits<Dist>::max()) sv.achieved = 0;
    out.passed = out.passed && sv.passed;
    out.stages.push_back(std::move(sv));
  }
  return out;
}

}  // namespace

SequenceVerdict verify_ordinary_sequence(const DecompositionSequence& seq, const std::vector<Dist>& gaps) {
  return verify_stages(seq, gaps, [](const Decomposition& part, Dist gap, StageVerdict& sv, std::size_t j) {
    auto v = verify_ordinary(part, gap);
    if (!v && sv.passed) {
      sv.passed = false;
      sv.detail = "part " + std::to_string(j) + ": " + v.describe();
    }
  });
}

SequenceVerdict verify_full_sequence(const DecompositionSequence& seq, const std::vector<Dist>& bounds) {
  return verify_stages(seq, bounds, [](const Decomposition& part, Dist bound, StageVerdict& sv, std::size_t j) {
    auto v = verify_full(part, bound);
    if (v.uncovered.empty() && !part.region().empty())
      sv.achieved = std::min(sv.achieved, v.unbounded ? std::max(bound, v.lebesgue) : v.lebesgue);
    if (!v && sv.passed) {
      sv.passed = false;
      sv.detail = "part " + std::to_string(j) + ": " + v.describe();
    }
  });
}

SequenceVerdict verify_ordinary_sequence(const DecompositionSequence& seq) {
  return verify_ordinary_sequence(seq, seq.bounds());
}

SequenceVerdict verify_full_sequence(const DecompositionSequence& seq) { return verify_full_sequence(seq, seq.bounds()); }

// ---------------------------------------------------------------------------

std::vector<PointSubset> r_components(const PointSubset& s, Dist r) {
  std::vector<PointSubset> out;
  auto left = s;
  const auto& space = s.space();
  while (auto seed = left.first()) {
    PointSubset comp(s.carrier());
    std::deque<PointId> queue{*seed};
    comp.insert(*seed);
    left.erase(*seed);
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop_front();
      auto row = space.row(x);
      for (auto y : left.points()) {
        if (row[y] < r) {
          comp.insert(y);
          left.erase(y);
          queue.push_back(y);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

namespace {

bool is_z_like(const GroupModel& g) {
  if (g.kind() == GroupKind::integer_lattice) return g.rank() == 1 && g.has_closed_form_length();
  const auto& gens = g.generators();
  if (gens.size() == 1) return true;
  return gens.size() == 2 && g.multiply(gens[0], gens[1]) == g.identity();
}

}  // namespace

Decomposition interval_decomposition_z(const GroupWindow& window, const PointSubset& region, Dist R) {
  if (R == 0) throw PreconditionError("interval decomposition needs R >= 1");
  if (region.carrier() != window.space()) throw CarrierMismatch();
  const auto& g = window.group();
  if (!is_z_like(g)) throw PreconditionError("interval decomposition needs Z or a cyclic quotient of Z, got " + g.name());
  std::vector<std::int64_t> len(window.size());
  std::int64_t top = 0;
  for (auto p : region.points()) {
    len[p] = g.word_length(window.element_of(p));
    top = std::max(top, len[p]);
  }
  const std::int64_t r = R;
  Decomposition d(region);
  auto annulus = [&](std::int64_t lo, std::int64_t hi) {
    PointSubset s(region.carrier());
    for (auto p : region.points())
      if (len[p] >= lo && len[p] <= hi) s.insert(p);
    return s;
  };
  for (std::int64_t j = 1; (4 * j - 4) * r <= top; ++j) {
    for (auto& piece : r_components(annulus((4 * j - 4) * r, (4 * j - 2) * r), R)) d.add(0, std::move(piece));
    if ((4 * j - 2) * r <= top)
      for (auto& piece : r_components(annulus((4 * j - 2) * r, 4 * j * r), R)) d.add(1, std::move(piece));
  }
  return d;
}

Decomposition coset_decomposition(const GroupWindow& window, const PointSubset& region, const Subgroup& sub, Dist R) {
  if (R == 0) throw PreconditionError("coset decomposition needs R >= 1");
  if (region.carrier() != window.space()) throw CarrierMismatch();
  const auto& g = window.group();
  if (!sub.parent().same_as(g)) throw PreconditionError("subgroup belongs to another group");
  for (const auto& x : g.ball(R))
    if (!sub.contains(x))
      throw PreconditionError("the ball B(1," + std::to_string(R) + ") is not inside the subgroup: " + g.format(x) +
                              " escapes");
  std::map<Element, PointSubset> classes;
  std::vector<Element> order;
  for (auto p : region.points()) {
    auto key = sub.coset_key(window.element_of(p));
    auto it = classes.find(key);
    if (it == classes.end()) {
      order.push_back(key);
      it = classes.emplace(key, PointSubset(region.carrier())).first;
    }
    it->second.insert(p);
  }
  Decomposition d(region);
  for (const auto& key : order) d.add(0, classes.at(key));
  if (!is_r_disjoint(d.color0(), R)) throw Error("cosets closer than R despite the ball condition");
  return d;
}

}  // namespace boxfdc
