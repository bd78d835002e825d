#pragma once

#include <boxfdc/group.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace boxfdc {

// --- constructions of small finite groups ------------------------------------

GroupModel trivial_group();
GroupModel cyclic_group(std::size_t n);
GroupModel dihedral_group(std::size_t n);   // order 2n
GroupModel dicyclic_group(std::size_t n);   // order 4n; n = 2 gives Q8
GroupModel symmetric_group(std::size_t n);
GroupModel alternating_group(std::size_t n);
GroupModel direct_product(const GroupModel& a, const GroupModel& b, std::string name = {});
// N x| Q where q acts on N through action[index of q], a permutation of N's
// element indices that must be an automorphism (checked via associativity).
GroupModel semidirect_product(const GroupModel& n, const GroupModel& q,
                              const std::vector<std::vector<std::size_t>>& action, std::string name = {});
// Z/m x| Z/n with the generator of Z/n acting as multiplication by a.
GroupModel metacyclic_group(std::size_t m, std::size_t n, std::int64_t a, std::string name = {});
// Group generated by 2x2 matrices over Z/p.
GroupModel matrix_group_mod_p(std::int64_t p, const std::vector<std::array<std::int64_t, 4>>& generators,
                              std::string name = {});
// Finite table group from an index-level operation on 0..n-1.
GroupModel group_from_operation(std::size_t n, const std::function<std::size_t(std::size_t, std::size_t)>& op,
                                std::vector<std::size_t> generators, std::string name,
                                std::vector<std::string> labels = {});

// One representative of every isomorphism class of groups of order <= max_order
// (max_order <= 24), each with a small generating set.
std::vector<GroupModel> small_groups(std::size_t max_order);

// --- subgroup lattice ---------------------------------------------------------

// All subgroups, ordered by size and then by member indices. Throws CapExceeded
// when the group order exceeds `cap`.
std::vector<Subgroup> all_subgroups(const GroupModel& g, std::size_t cap = 64);
bool is_normal_in(const Subgroup& k, const Subgroup& h);
bool is_contained_in(const Subgroup& k, const Subgroup& h);

// H/K with the metric induced from G and then passed to the quotient:
// d([a],[b]) = min over k in K of l_G(a^-1 b k).
class Subquotient {
 public:
  Subquotient(Subgroup h, Subgroup k);

  const Subgroup& upper() const { return h_; }
  const Subgroup& lower() const { return k_; }
  std::size_t order() const { return cosets_.size(); }
  const std::vector<Element>& cosets() const { return cosets_; }  // least member of each coset
  std::size_t coset_index(const Element& x) const;
  std::int64_t length(const Element& x) const { return lengths_[coset_index(x)]; }
  std::int64_t length_of(std::size_t coset) const { return lengths_.at(coset); }
  const SpacePtr& space() const { return space_; }
  std::string describe() const;

 private:
  Subgroup h_, k_;
  std::vector<Element> cosets_;
  std::vector<std::size_t> coset_of_parent_index_;
  std::vector<std::int64_t> lengths_;
  SpacePtr space_;
};

// {H/K : K normal in H <= G} for a finite group of order <= cap.
std::vector<Subquotient> associated_family(const GroupModel& g, std::size_t cap = 64);

// Group order statistics used to tell small groups apart.
std::string group_signature(const GroupModel& g);

}  // namespace boxfdc
