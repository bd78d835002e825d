#pragma once

#include <boxfdc/errors.hpp>

#include <boost/dynamic_bitset.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace boxfdc {

using Dist = std::uint32_t;
using PointId = std::size_t;

// A non-negative integer distance or +infinity. Infinity is an explicit
// state, never a reserved integer.
class ExtendedDistance {
 public:
  constexpr ExtendedDistance(Dist d) : value_(d), finite_(true) {}  // NOLINT
  static constexpr ExtendedDistance infinity() { return ExtendedDistance(); }

  constexpr bool is_finite() const { return finite_; }
  Dist value() const;

  friend constexpr bool operator==(const ExtendedDistance& a, const ExtendedDistance& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const ExtendedDistance& a,
                                                    const ExtendedDistance& b) {
    if (a.finite_ != b.finite_) return a.finite_ ? std::strong_ordering::less : std::strong_ordering::greater;
    if (!a.finite_) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }

  std::string str() const;

 private:
  constexpr ExtendedDistance() : value_(0), finite_(false) {}
  Dist value_;
  bool finite_;
};

enum class Validation { check, skip };

struct MetricViolation {
  enum class Kind { identity, symmetry, triangle };
  Kind kind;
  PointId p = 0, q = 0, r = 0;
  std::string describe() const;
};

class MetricAxiomError : public Error {
 public:
  explicit MetricAxiomError(MetricViolation v);
  const MetricViolation& witness() const { return witness_; }

 private:
  MetricViolation witness_;
};

// A finite point set 0..n-1 with an exact integer metric. Distances come from
// a callback and are materialized into a dense matrix on first use.
class FiniteMetricSpace {
 public:
  using DistanceFn = std::function<Dist(PointId, PointId)>;

  FiniteMetricSpace(std::vector<std::string> labels, DistanceFn fn);
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<Dist> matrix);

  FiniteMetricSpace(const FiniteMetricSpace&) = delete;
  FiniteMetricSpace& operator=(const FiniteMetricSpace&) = delete;

  std::size_t size() const { return labels_.size(); }
  const std::string& label(PointId p) const { return labels_.at(p); }
  const std::vector<std::string>& labels() const { return labels_; }

  Dist dist(PointId p, PointId q) const { return matrix()[p * size() + q]; }
  std::span<const Dist> row(PointId p) const { return matrix().subspan(p * size(), size()); }
  std::span<const Dist> matrix() const;

  std::optional<MetricViolation> find_violation() const;

 private:
  std::vector<std::string> labels_;
  DistanceFn fn_;
  mutable std::once_flag filled_;
  mutable std::vector<Dist> matrix_;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

// Builds a space and, unless told otherwise, checks the metric axioms.
SpacePtr make_space(std::vector<std::string> labels, FiniteMetricSpace::DistanceFn fn,
                    Validation v = Validation::check);
SpacePtr make_space(std::vector<std::string> labels, std::vector<Dist> matrix,
                    Validation v = Validation::check);

class PointSubset {
 public:
  explicit PointSubset(SpacePtr carrier);
  PointSubset(SpacePtr carrier, boost::dynamic_bitset<> members);
  PointSubset(SpacePtr carrier, std::span<const PointId> points);

  static PointSubset all(SpacePtr carrier);

  const SpacePtr& carrier() const { return carrier_; }
  const FiniteMetricSpace& space() const { return *carrier_; }
  const boost::dynamic_bitset<>& bits() const { return members_; }

  bool contains(PointId p) const { return members_.test(p); }
  std::size_t size() const { return members_.count(); }
  bool empty() const { return members_.none(); }
  std::vector<PointId> points() const;
  std::optional<PointId> first() const;

  void insert(PointId p) { members_.set(p); }
  void erase(PointId p) { members_.reset(p); }

  bool is_subset_of(const PointSubset& other) const;
  bool intersects(const PointSubset& other) const;
  PointSubset operator|(const PointSubset& other) const;
  PointSubset operator&(const PointSubset& other) const;
  PointSubset operator-(const PointSubset& other) const;
  PointSubset complement() const;

  std::string str() const;

  friend bool operator==(const PointSubset& a, const PointSubset& b) {
    return a.carrier_ == b.carrier_ && a.members_ == b.members_;
  }
  friend bool operator<(const PointSubset& a, const PointSubset& b) { return a.members_ < b.members_; }

 private:
  void require_same(const PointSubset& other) const;
  SpacePtr carrier_;
  boost::dynamic_bitset<> members_;
};

// Finite list of subsets of one carrier. Duplicates are allowed.
class SubsetFamily {
 public:
  explicit SubsetFamily(SpacePtr carrier) : carrier_(std::move(carrier)) {}
  SubsetFamily(SpacePtr carrier, std::vector<PointSubset> pieces);

  const SpacePtr& carrier() const { return carrier_; }
  const std::vector<PointSubset>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  bool empty() const { return pieces_.empty(); }
  const PointSubset& operator[](std::size_t i) const { return pieces_[i]; }

  void add(PointSubset piece);
  PointSubset union_of() const;

 private:
  SpacePtr carrier_;
  std::vector<PointSubset> pieces_;
};

Dist diameter(const PointSubset& s);
ExtendedDistance set_distance(const PointSubset& a, const PointSubset& b);
ExtendedDistance distance_to(PointId x, const PointSubset& s);

struct DisjointnessWitness {
  std::size_t first = 0;
  std::size_t second = 0;
  Dist distance = 0;
};

struct DisjointnessVerdict {
  bool disjoint = true;
  std::optional<DisjointnessWitness> witness;
  explicit operator bool() const { return disjoint; }
};

// Pairs of pieces with equal member sets count as one piece.
DisjointnessVerdict is_r_disjoint(const SubsetFamily& family, Dist r);

PointSubset open_ball(const SpacePtr& space, PointId center, Dist radius);

// {x in within : d(x, s) < radius}; the one-argument form uses the whole carrier.
PointSubset outer_neighborhood(const PointSubset& s, Dist radius);
PointSubset outer_neighborhood(const PointSubset& s, Dist radius, const PointSubset& within);

// {x in within : d(x, within \ s) >= radius}; the one-argument form uses the whole carrier.
PointSubset inner_neighborhood(const PointSubset& s, Dist radius);
PointSubset inner_neighborhood(const PointSubset& s, Dist radius, const PointSubset& within);

// Largest r such that every open r-ball of the region (intersected with the
// region) lies inside one piece. When a single piece swallows the region every
// r works and diameter(region)+1 is returned. Throws NotACover.
Dist lebesgue_number(const SubsetFamily& cover, const PointSubset& region);

}  // namespace boxfdc
