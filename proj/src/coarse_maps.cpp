#include <boxfdc/coarse_maps.hpp>
#include <boxfdc/errors.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace boxfdc {

void MapFamily::add(SpacePtr domain, SpacePtr codomain, std::vector<PointId> function) {
  if (!domain || !codomain) throw PreconditionError("map member needs a domain and a codomain");
  if (function.size() != domain->size())
    throw PreconditionError("map is not total: " + std::to_string(function.size()) + " images for " +
                            std::to_string(domain->size()) + " points");
  for (std::size_t p = 0; p < function.size(); ++p)
    if (function[p] >= codomain->size())
      throw PreconditionError("image of point " + std::to_string(p) + " is not a codomain point");
  members_.push_back({std::move(domain), std::move(codomain), std::move(function)});
}

MapFamily map_between(const GroupWindow& from, const GroupWindow& to,
                      const std::function<Element(const Element&)>& f) {
  std::vector<PointId> images;
  images.reserve(from.size());
  for (const auto& e : from.elements()) {
    const auto img = f(e);
    auto p = to.find(img);
    if (!p)
      throw PreconditionError("image " + to.group().format(img) + " of " + from.group().format(e) +
                              " lies outside the target window");
    images.push_back(*p);
  }
  MapFamily mf;
  mf.add(from.space(), to.space(), std::move(images));
  return mf;
}

MapFamily projection_map(const GroupWindow& from, const QuotientModel& q) {
  if (!from.group().same_as(q.parent())) throw PreconditionError("window belongs to another group");
  std::vector<PointId> images;
  images.reserve(from.size());
  for (const auto& e : from.elements()) images.push_back(q.coset_index(e));
  MapFamily mf;
  mf.add(from.space(), q.window().space(), std::move(images));
  return mf;
}

MapFamily compose(const MapFamily& first, const MapFamily& second) {
  if (first.size() != second.size()) throw PreconditionError("composed families have different member counts");
  MapFamily out;
  for (std::size_t i = 0; i < first.size(); ++i) {
    const auto& a = first.members()[i];
    const auto& b = second.members()[i];
    if (a.codomain != b.domain) throw PreconditionError("member " + std::to_string(i) + " does not compose");
    std::vector<PointId> images;
    images.reserve(a.function.size());
    for (auto y : a.function) images.push_back(b.function[y]);
    out.add(a.domain, b.codomain, std::move(images));
  }
  return out;
}

// ---------------------------------------------------------------------------

Dist ModulusReport::upper(Dist t) const {
  auto it = rho1_envelope.upper_bound(t);
  if (it == rho1_envelope.begin()) return 0;
  return std::prev(it)->second;
}

std::optional<Dist> ModulusReport::lower(Dist t) const {
  auto it = rho2_envelope.lower_bound(t);
  if (it == rho2_envelope.end()) return std::nullopt;
  return it->second;
}

ModulusReport modulus_profile(const MapFamily& mf) {
  ModulusReport r;
  for (const auto& m : mf.members()) {
    const auto n = m.domain->size();
    for (PointId x = 0; x < n; ++x)
      for (PointId y = x; y < n; ++y) {
        const Dist t = m.domain->dist(x, y);
        const Dist s = m.codomain->dist(m.function[x], m.function[y]);
        auto [hi, fresh_hi] = r.rho1.try_emplace(t, s);
        if (!fresh_hi) hi->second = std::max(hi->second, s);
        auto [lo, fresh_lo] = r.rho2.try_emplace(t, s);
        if (!fresh_lo) lo->second = std::min(lo->second, s);
      }
  }
  Dist run = 0;
  for (const auto& [t, s] : r.rho1) {
    run = std::max(run, s);
    r.rho1_envelope[t] = run;
  }
  bool started = false;
  for (auto it = r.rho2.rbegin(); it != r.rho2.rend(); ++it) {
    run = started ? std::min(run, it->second) : it->second;
    started = true;
    r.rho2_envelope[it->first] = run;
  }
  return r;
}

// ---------------------------------------------------------------------------

std::string CoarseEquivalenceVerdict::describe() const {
  std::ostringstream os;
  if (passed) {
    os << "coarse equivalence on the tested window: displacements " << forward_displacement << " and "
       << backward_displacement;
    return os.str();
  }
  return reason;
}

namespace {

Dist displacement(const MapMember& f, const MapMember& g) {
  Dist worst = 0;
  for (PointId x = 0; x < f.domain->size(); ++x) worst = std::max(worst, f.domain->dist(x, g.function[f.function[x]]));
  return worst;
}

std::optional<Dist> below_floor(const ModulusReport& r, const std::function<Dist(Dist)>& floor) {
  for (const auto& [t, s] : r.rho2_envelope)
    if (s < floor(t)) return t;
  return std::nullopt;
}

}  // namespace

CoarseEquivalenceVerdict check_coarse_equivalence(const MapFamily& forward, const MapFamily& backward, Dist C,
                                                  const std::function<Dist(Dist)>& properness_floor) {
  if (forward.size() != backward.size())
    throw PreconditionError("forward and backward families have different member counts");
  for (std::size_t i = 0; i < forward.size(); ++i) {
    const auto& f = forward.members()[i];
    const auto& g = backward.members()[i];
    if (f.codomain != g.domain || g.codomain != f.domain)
      throw PreconditionError("member " + std::to_string(i) + " of the backward family does not reverse the forward one");
  }
  CoarseEquivalenceVerdict v;
  v.forward = modulus_profile(forward);
  v.backward = modulus_profile(backward);
  for (std::size_t i = 0; i < forward.size(); ++i) {
    const auto& f = forward.members()[i];
    const auto& g = backward.members()[i];
    v.forward_displacement = std::max(v.forward_displacement, displacement(f, g));
    v.backward_displacement = std::max(v.backward_displacement, displacement(g, f));
  }
  v.floor_failure_forward = below_floor(v.forward, properness_floor);
  v.floor_failure_backward = below_floor(v.backward, properness_floor);

  std::ostringstream why;
  if (v.forward_displacement > C) why << "d(x, g f x) reaches " << v.forward_displacement << " > " << C << "; ";
  if (v.backward_displacement > C) why << "d(y, f g y) reaches " << v.backward_displacement << " > " << C << "; ";
  if (v.floor_failure_forward) why << "forward map falls below the floor at distance " << *v.floor_failure_forward << "; ";
  if (v.floor_failure_backward)
    why << "backward map falls below the floor at distance " << *v.floor_failure_backward << "; ";
  v.reason = why.str();
  v.passed = v.reason.empty();
  return v;
}

// ---------------------------------------------------------------------------

namespace {

Subgroup image_in_quotient(const Subgroup& s, const QuotientModel& q) {
  std::set<std::size_t> idx;
  for (const auto& x : s.elements()) idx.insert(q.coset_index(x));
  std::vector<Element> members;
  for (auto i : idx) members.push_back(Element{static_cast<std::int64_t>(i)});
  return Subgroup::from_elements(q.as_group(), std::move(members));
}

std::set<std::size_t> ball_of(const Subquotient& s, std::int64_t radius) {
  std::set<std::size_t> out;
  for (std::size_t c = 0; c < s.order(); ++c)
    if (s.length_of(c) < radius) out.insert(c);
  return out;
}

}  // namespace

std::vector<QuotientIsoVerdict> check_quotient_iso_metric(const GroupModel& g, const Subgroup& n0,
                                                          const std::vector<SubgroupPair>& pairs) {
  if (!g.is_finite()) throw PreconditionError("quotient isomorphism check needs a finite group");
  if (!n0.parent().same_as(g)) throw PreconditionError("N0 belongs to another group");
  if (!is_normal_in(n0, Subgroup::whole(g))) throw PreconditionError("N0 is not normal in G");
  const QuotientModel q(g, n0, 0);

  std::vector<QuotientIsoVerdict> out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [h, k] = pairs[i];
    const std::string tag = "pair " + std::to_string(i) + ": ";
    if (!h.parent().same_as(g) || !k.parent().same_as(g)) throw PreconditionError(tag + "subgroup of another group");
    if (!is_contained_in(n0, k)) throw PreconditionError(tag + "N0 is not contained in K");
    if (!is_normal_in(k, h)) throw PreconditionError(tag + "K is not a normal subgroup of H");

    const Subquotient direct(h, k);
    const Subquotient via(image_in_quotient(h, q), image_in_quotient(k, q));
    QuotientIsoVerdict v;
    v.order = direct.order();

    // psi sends the coset of hN0 in (H/N0)/(K/N0) to hK
    std::vector<std::size_t> psi(via.order(), static_cast<std::size_t>(-1));
    for (const auto& x : h.elements()) {
      const auto from = via.coset_index(Element{static_cast<std::int64_t>(q.coset_index(x))});
      const auto to = direct.coset_index(x);
      if (psi[from] == static_cast<std::size_t>(-1))
        psi[from] = to;
      else if (psi[from] != to) {
        v.passed = false;
        v.reason = "canonical map is not well defined";
        break;
      }
    }
    if (v.passed && (via.order() != direct.order() ||
                     std::set<std::size_t>(psi.begin(), psi.end()).size() != direct.order())) {
      v.passed = false;
      v.reason = "canonical map is not a bijection";
    }
    if (v.passed) {
      std::int64_t diam = 0;
      for (std::size_t c = 0; c < direct.order(); ++c) diam = std::max(diam, direct.length_of(c));
      for (std::size_t c = 0; c < via.order(); ++c) diam = std::max(diam, via.length_of(c));
      for (std::int64_t r = 1; r <= diam + 1; ++r) {
        std::set<std::size_t> mapped;
        for (auto c : ball_of(via, r)) mapped.insert(psi[c]);
        v.radius_checked = r;
        if (mapped != ball_of(direct, r)) {
          v.passed = false;
          v.failing_radius = r;
          v.reason = "balls of radius " + std::to_string(r) + " do not correspond";
          break;
        }
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<AdmissibleTriple> admissible_triples(const GroupModel& g, std::size_t cap) {
  const auto subs = all_subgroups(g, cap);
  const auto whole = Subgroup::whole(g);
  std::vector<AdmissibleTriple> out;
  for (const auto& n0 : subs) {
    if (!is_normal_in(n0, whole)) continue;
    for (const auto& k : subs) {
      if (!is_contained_in(n0, k)) continue;
      for (const auto& h : subs)
        if (is_normal_in(k, h)) out.push_back({n0, k, h});
    }
  }
  return out;
}

}  // namespace boxfdc
