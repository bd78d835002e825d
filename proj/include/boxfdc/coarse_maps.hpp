#pragma once

#include <boxfdc/finite_groups.hpp>
#include <boxfdc/group.hpp>
#include <boxfdc/metric.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace boxfdc {

struct MapMember {
  SpacePtr domain;
  SpacePtr codomain;
  std::vector<PointId> function;  // image of each domain point
};

// A map of families: one total function per member.
class MapFamily {
 public:
  MapFamily() = default;
  void add(SpacePtr domain, SpacePtr codomain, std::vector<PointId> function);
  const std::vector<MapMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

 private:
  std::vector<MapMember> members_;
};

// Map between two windows of groups induced by f on elements. Throws when an
// image falls outside the target window.
MapFamily map_between(const GroupWindow& from, const GroupWindow& to,
                      const std::function<Element(const Element&)>& f);
// The projection from a window of G onto the whole quotient G/N.
MapFamily projection_map(const GroupWindow& from, const QuotientModel& q);
// second o first, member by member.
MapFamily compose(const MapFamily& first, const MapFamily& second);

// Tables keyed by the input distances t that occur among pairs of a member's
// domain. rho1[t] is the largest image distance, rho2[t] the smallest.
struct ModulusReport {
  std::map<Dist, Dist> rho1, rho2;
  std::map<Dist, Dist> rho1_envelope;  // least non-decreasing majorant of rho1
  std::map<Dist, Dist> rho2_envelope;  // greatest non-decreasing minorant of rho2
  // Envelope values at any t >= 0 (step extension); nullopt past the table for rho2.
  Dist upper(Dist t) const;
  std::optional<Dist> lower(Dist t) const;
};

ModulusReport modulus_profile(const MapFamily& mf);

struct CoarseEquivalenceVerdict {
  bool passed = false;
  ModulusReport forward, backward;
  Dist forward_displacement = 0;   // max d(x, g f x) over domain points
  Dist backward_displacement = 0;  // max d(y, f g y)
  std::optional<Dist> floor_failure_forward;   // an input distance below the floor
  std::optional<Dist> floor_failure_backward;
  std::string reason;
  explicit operator bool() const { return passed; }
  std::string describe() const;
};

// Passes when both displacements are <= C and the rho2 envelopes of both maps
// stay at or above the floor on every occurring distance. This certifies
// properness only on the tested window.
CoarseEquivalenceVerdict check_coarse_equivalence(const MapFamily& forward, const MapFamily& backward, Dist C,
                                                  const std::function<Dist(Dist)>& properness_floor);

// ---------------------------------------------------------------------------

struct SubgroupPair {
  Subgroup upper;  // H
  Subgroup lower;  // K, normal in H
};

struct QuotientIsoVerdict {
  bool passed = true;
  std::size_t order = 0;          // |H/K|
  std::int64_t radius_checked = 0;  // balls compared for R = 1..radius_checked
  std::optional<std::int64_t> failing_radius;
  std::string reason;
  explicit operator bool() const { return passed; }
};

// For N0 normal in G and N0 <= K normal in H, compares (H/N0)/(K/N0), measured
// with the word metric of G/N0, against H/K measured with that of G, through
// the canonical isomorphism hN0(K/N0) -> hK. Checks well-definedness,
// bijectivity and ball-to-ball correspondence at every radius up to the
// diameter plus one. One verdict per pair.
std::vector<QuotientIsoVerdict> check_quotient_iso_metric(const GroupModel& g, const Subgroup& n0,
                                                          const std::vector<SubgroupPair>& pairs);

struct AdmissibleTriple {
  Subgroup n0, lower, upper;
};

// All (N0, K, H) with N0 normal in G, N0 <= K, K normal in H.
std::vector<AdmissibleTriple> admissible_triples(const GroupModel& g, std::size_t cap = 64);

}  // namespace boxfdc
