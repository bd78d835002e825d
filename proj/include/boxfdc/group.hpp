#pragma once

#include <boxfdc/lattice.hpp>
#include <boxfdc/metric.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace boxfdc {

// Group elements are integer vectors: coordinates for Z^n, a single table
// index for finite_table groups, the image list for permutation groups.
using Element = std::vector<std::int64_t>;

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

template <class V>
using ElementMap = std::unordered_map<Element, V, ElementHash>;

std::string format_element(const Element& e);

enum class GroupKind { integer_lattice, finite_table, permutation_group };

std::string to_string(GroupKind k);

namespace detail {
struct GroupData;
struct SubgroupData;
struct QuotientData;
}  // namespace detail

// A group with a finite symmetric generating set and the word length it
// induces. Cheap to copy; copies share caches.
class GroupModel {
 public:
  // Z^n with the standard generators +-e_i (closed-form l1 length).
  static GroupModel integer_lattice(std::size_t rank, std::int64_t window_radius = 64);
  // Z^n with arbitrary generators; lengths come from a breadth-first search
  // out to `window_radius`.
  static GroupModel integer_lattice(std::size_t rank, std::vector<Element> generators,
                                    std::int64_t window_radius);
  // Finite group from a multiplication table; element i is Element{i}.
  static GroupModel finite_table(std::vector<std::vector<std::size_t>> table,
                                 std::vector<std::size_t> generators, std::string name = {},
                                 std::vector<std::string> labels = {});
  // Group generated by permutations of {0..degree-1}; (a*b)(x) = a(b(x)).
  static GroupModel permutation_group(std::size_t degree, std::vector<std::vector<std::size_t>> generators,
                                      std::string name = {});

  GroupKind kind() const;
  const std::string& name() const;
  std::size_t rank() const;  // lattice rank; 0 for finite groups
  const std::vector<Element>& generators() const;
  const Element& identity() const;

  Element multiply(const Element& a, const Element& b) const;
  Element invert(const Element& a) const;
  bool is_element(const Element& e) const;

  bool is_finite() const;
  std::size_t order() const;  // finite groups only
  const std::vector<Element>& elements() const;  // finite groups, lexicographic
  std::size_t index_of(const Element& e) const;  // position in elements()

  std::int64_t window_radius() const;
  bool has_closed_form_length() const;

  std::int64_t word_length(const Element& e) const;
  // Always uses breadth-first search (for cross-checking the closed form).
  std::int64_t word_length_by_search(const Element& e) const;
  std::int64_t distance(const Element& a, const Element& b) const {
    return word_length(multiply(invert(a), b));
  }
  // Open ball {e : l(e) < radius}, lexicographic.
  std::vector<Element> ball(std::int64_t radius) const;

  std::string format(const Element& e) const;

  bool same_as(const GroupModel& other) const { return data_ == other.data_; }

 private:
  explicit GroupModel(std::shared_ptr<const detail::GroupData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::GroupData> data_;
  friend struct detail::GroupData;
};

class Subgroup {
 public:
  // Sublattice of Z^n spanned by `basis` (any integer spanning set).
  static Subgroup lattice(const GroupModel& parent, std::vector<Element> basis);
  // Closure of `gens`; lattice parents get the spanned sublattice.
  static Subgroup generated_by(const GroupModel& parent, std::vector<Element> gens);
  // Exact member list of a finite group; must be closed.
  static Subgroup from_elements(const GroupModel& parent, std::vector<Element> members);
  static Subgroup trivial(const GroupModel& parent);
  static Subgroup whole(const GroupModel& parent);

  const GroupModel& parent() const;
  bool contains(const Element& e) const;
  // Members with word length < radius, lexicographic.
  std::vector<Element> members_within(std::int64_t radius) const;

  bool has_finite_index() const;
  std::size_t index() const;
  bool is_finite() const;
  const std::vector<Element>& elements() const;  // finite subgroups only
  const IntegerLattice* lattice() const;          // null unless a sublattice

  // Canonical key of the left coset e*S: the reduced residue for lattices, the
  // lexicographically least member for finite parents.
  Element coset_key(const Element& e) const;

  // Spot checks on the enumerated window of the given radius.
  std::optional<std::pair<Element, Element>> closure_violation(std::int64_t radius) const;
  std::optional<std::pair<Element, Element>> normality_violation(std::int64_t radius) const;

  std::string describe() const;

 private:
  explicit Subgroup(std::shared_ptr<const detail::SubgroupData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::SubgroupData> data_;
};

// A group of elements with a materialized metric space on them.
class GroupWindow {
 public:
  static GroupWindow ball(const GroupModel& g, std::int64_t radius);
  static GroupWindow of(const GroupModel& g, std::vector<Element> elements);
  static GroupWindow whole(const GroupModel& finite_group);
  // Axis-aligned box [low, high] in Z^n.
  static GroupWindow box(const GroupModel& lattice, const Element& low, const Element& high);
  // Build with a precomputed distance matrix (used by the distance cache).
  static GroupWindow with_matrix(const GroupModel& g, std::vector<Element> elements, std::vector<Dist> matrix);

  const GroupModel& group() const { return group_; }
  const SpacePtr& space() const { return space_; }
  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  std::optional<PointId> find(const Element& e) const;
  PointId point_of(const Element& e) const;
  const Element& element_of(PointId p) const { return elements_.at(p); }

  PointSubset subset(const std::vector<Element>& elems) const;
  PointSubset all() const { return PointSubset::all(space_); }
  std::vector<Element> elements_of(const PointSubset& s) const;

 private:
  GroupWindow(GroupModel g, std::vector<Element> elems, SpacePtr space);
  GroupModel group_;
  std::vector<Element> elements_;
  std::shared_ptr<const ElementMap<PointId>> index_;
  SpacePtr space_;
};

// G/N for a normal subgroup of finite index, with the quotient length
// computed by breadth-first search over the images of the generators.
class QuotientModel {
 public:
  QuotientModel(const GroupModel& parent, const Subgroup& normal, std::int64_t check_radius = 4);

  const GroupModel& parent() const;
  const Subgroup& normal() const;
  std::size_t index() const;

  Element key(const Element& g) const;
  std::size_t coset_index(const Element& g) const;
  const std::vector<Element>& cosets() const;  // canonical keys, lexicographic

  // The quotient as a finite group on coset indices with the image generators.
  const GroupModel& as_group() const;
  // Whole quotient as a metric space (points = coset indices).
  const GroupWindow& window() const;

  std::int64_t length(const Element& g) const;
  // Independent route: least parent word length over the coset.
  std::int64_t length_by_coset_minimum(const Element& g) const;
  // Shortest coset member; ties go to the lexicographically least.
  Element representative(const Element& g) const;
  std::int64_t diameter() const;
  // Coset indices with quotient length < radius.
  std::vector<std::size_t> ball(std::int64_t radius) const;

 private:
  std::shared_ptr<const detail::QuotientData> data_;
};

// --- operations ------------------------------------------------------------

std::int64_t word_length(const GroupModel& g, const Element& e);
std::int64_t quotient_length(const QuotientModel& q, const Element& e);
std::vector<Element> group_ball(const GroupModel& g, std::int64_t radius);

struct BallPushforwardVerdict {
  bool equal = true;
  std::int64_t radius = 0;
  std::vector<std::size_t> image_only;     // in pi(B_G) but not in B_{G/N}
  std::vector<std::size_t> quotient_only;  // in B_{G/N} but not in pi(B_G)
  explicit operator bool() const { return equal; }
};

BallPushforwardVerdict check_ball_pushforward(const QuotientModel& q, std::int64_t radius);

SpacePtr induced_space(const GroupModel& g, std::int64_t radius);

struct BornologousVerdict {
  bool holds = true;
  std::int64_t radius = 0;
  std::optional<Element> witness;
  explicit operator bool() const { return holds; }
};

using Homomorphism = std::function<Element(const Element&)>;

// phi(B_G(1,R)) inside B_H(1, rho_plus(R)) for every R <= r_max.
BornologousVerdict bornologous_check(const GroupModel& source, const GroupModel& target, const Homomorphism& phi,
                                     const std::function<std::int64_t(std::int64_t)>& rho_plus,
                                     std::int64_t r_max);

}  // namespace boxfdc
