#include <boxfdc/decomposition.hpp>
#include <boxfdc/errors.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace boxfdc {

namespace {

std::int64_t pick_scale(Dist max_diameter, std::int64_t requested) {
  return requested > 0 ? requested : static_cast<std::int64_t>(max_diameter) + 1;
}

void require_separation(const QuotientModel& q, std::int64_t c) {
  const auto close = q.normal().members_within(2 * c);
  for (const auto& x : close)
    if (x != q.parent().identity())
      throw PreconditionError("separation fails: " + q.parent().format(x) + " lies in N and in B(1," +
                              std::to_string(2 * c) + ")");
}

void require_small_pieces(const Decomposition& d, std::int64_t c) {
  for (int col = 0; col < 2; ++col)
    for (std::size_t i = 0; i < d.color(col).size(); ++i) {
      const auto diam = diameter(d.color(col)[i]);
      if (static_cast<std::int64_t>(diam) >= c)
        throw PreconditionError("color " + std::to_string(col) + " piece " + std::to_string(i) + " has diameter " +
                                std::to_string(diam) + ", not below the scale " + std::to_string(c));
    }
}

Decomposition sorted_copy(const Decomposition& d) {
  Decomposition out(d.region());
  for (int c = 0; c < 2; ++c) {
    auto pieces = d.color(c).pieces();
    std::sort(pieces.begin(), pieces.end(), [](const PointSubset& a, const PointSubset& b) {
      return a.first().value_or(0) < b.first().value_or(0) ||
             (a.first().value_or(0) == b.first().value_or(0) && a.points() < b.points());
    });
    for (auto& p : pieces) out.add(c, std::move(p));
  }
  return out;
}

}  // namespace

PullbackResult pullback_equivariant(const Decomposition& d, const QuotientModel& q, const GroupWindow& window,
                                    std::int64_t scale) {
  const auto& qwin = q.window();
  if (d.carrier() != qwin.space()) throw CarrierMismatch();
  if (!window.group().same_as(q.parent())) throw PreconditionError("window belongs to another group");
  const auto& g = q.parent();
  const std::int64_t c = pick_scale(d.max_diameter(), scale);
  require_small_pieces(d, c);
  require_separation(q, c);

  const auto ball = g.ball(c);
  PullbackResult result{Decomposition(window.all()), {}, c, {}};
  Decomposition out(window.all());
  for (int col = 0; col < 2; ++col) {
    for (std::size_t i = 0; i < d.color(col).size(); ++i) {
      const auto ys = d.color(col)[i].points();  // coset indices
      if (ys.empty()) continue;
      const auto& cosets = q.cosets();
      const Element u0 = q.representative(cosets[ys.front()]);
      const Element base_inv = g.invert(cosets[ys.front()]);
      std::vector<Element> lift{u0};
      for (std::size_t k = 1; k < ys.size(); ++k) {
        // shortest v with pi(u0 v) = y; its length is the quotient distance
        const auto target = q.coset_index(g.multiply(base_inv, cosets[ys[k]]));
        std::optional<Element> best;
        std::int64_t best_len = 0;
        for (const auto& v : ball) {
          if (q.coset_index(v) != target) continue;
          const auto len = g.word_length(v);
          if (!best || len < best_len) {
            best = v;
            best_len = len;
          }
        }
        if (!best) throw PreconditionError("no lift within the scale for a point of a piece");
        lift.push_back(g.multiply(u0, *best));
      }
      for (std::size_t a = 0; a < ys.size(); ++a)
        for (std::size_t b = a + 1; b < ys.size(); ++b)
          if (g.distance(lift[a], lift[b]) != static_cast<std::int64_t>(qwin.space()->dist(ys[a], ys[b])))
            throw PreconditionError("lift of color " + std::to_string(col) + " piece " + std::to_string(i) +
                                    " is not isometric");

      // translates U*h, h in N, that meet the window
      std::set<Element> hs;
      for (const auto& u : lift) {
        const auto uinv = g.invert(u);
        for (const auto& w : window.elements()) {
          auto h = g.multiply(uinv, w);
          if (q.normal().contains(h)) hs.insert(std::move(h));
        }
      }
      for (const auto& h : hs) {
        PointSubset piece(window.space());
        std::size_t inside = 0;
        for (const auto& u : lift) {
          if (auto p = window.find(g.multiply(u, h))) {
            piece.insert(*p);
            ++inside;
          }
        }
        if (inside != lift.size())
          throw PreconditionError("window cuts a translate of the lift of color " + std::to_string(col) + " piece " +
                                  std::to_string(i) + " by " + g.format(h));
        out.add(col, std::move(piece));
      }
      result.lifts.push_back(std::move(lift));
    }
  }
  result.decomposition = sorted_copy(out);
  result.invariance = verify_invariance(result.decomposition, InvarianceSpec{window, q.normal()});
  return result;
}

PushforwardResult pushforward_equivariant(const Decomposition& d, const GroupWindow& window, const QuotientModel& q,
                                          std::int64_t scale) {
  if (d.carrier() != window.space()) throw CarrierMismatch();
  if (!window.group().same_as(q.parent())) throw PreconditionError("window belongs to another group");
  const std::int64_t c = pick_scale(d.max_diameter(), scale);
  require_small_pieces(d, c);
  require_separation(q, c);
  auto inv = verify_invariance(d, InvarianceSpec{window, q.normal()});
  if (!inv) throw PreconditionError("decomposition is not invariant: " + inv.describe());

  const auto& qspace = q.window().space();
  auto project = [&](const PointSubset& s) {
    PointSubset img(qspace);
    for (auto p : s.points()) img.insert(q.coset_index(window.element_of(p)));
    return img;
  };
  Decomposition out(project(d.region()));
  for (int col = 0; col < 2; ++col) {
    std::set<boost::dynamic_bitset<>> seen;
    for (const auto& piece : d.color(col).pieces()) {
      auto img = project(piece);
      if (seen.insert(img.bits()).second) out.add(col, std::move(img));
    }
  }
  PushforwardResult result{sorted_copy(out), c, 0, 0};
  if ((d.region() - d.pooled().union_of()).empty()) result.lebesgue_before = lebesgue_number(d.pooled(), d.region());
  const auto& o = result.decomposition;
  if ((o.region() - o.pooled().union_of()).empty()) result.lebesgue_after = lebesgue_number(o.pooled(), o.region());
  return result;
}

}  // namespace boxfdc
