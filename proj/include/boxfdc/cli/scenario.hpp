#pragma once

#include <boxfdc/box_space.hpp>
#include <boxfdc/cli/config.hpp>
#include <boxfdc/game.hpp>
#include <boxfdc/group.hpp>

#include <optional>
#include <string>
#include <vector>

namespace boxfdc::cli {

// Element syntax: "3", "(1,-2)" or "[1 0 2]"; lists are separated by ';'.
Element parse_element(const std::string& text);
std::vector<Element> parse_element_list(const std::string& text);
std::string element_text(const Element& e, bool permutation);
std::string element_list_text(const std::vector<Element>& elems, bool permutation);

struct GroupSpec {
  std::string kind = "lattice";  // lattice cyclic dihedral dicyclic symmetric alternating permutation small
  std::int64_t rank = 1;
  std::int64_t order = 0;        // parameter n for the named finite families; group order for "small"
  std::int64_t index = 0;        // position among the small groups of that order
  std::int64_t degree = 0;       // permutation groups
  std::vector<Element> generators;
  std::int64_t search_radius = 64;
  bool operator==(const GroupSpec&) const = default;
};

struct ChainSpec {
  std::string kind = "none";  // none powers explicit
  std::int64_t base = 2;
  std::int64_t depth = 0;
  std::vector<std::vector<Element>> subgroups;  // generators of N_1, N_2, ...
  bool operator==(const ChainSpec&) const = default;
};

struct RegionSpec {
  std::string kind = "whole";  // whole ball box
  std::int64_t radius = 0;     // open ball l < radius
  Element low, high;
  bool operator==(const RegionSpec&) const = default;
};

struct GameSpec {
  std::string strategy = "interval";  // interval coordinate-peel coset periodic-interval no-split
  std::vector<std::int64_t> challenge;
  std::int64_t bound = 0;
  std::vector<std::int64_t> axes;
  std::int64_t period = 0;
  std::int64_t chain_index = 0;
  std::vector<Element> subgroup;
  bool operator==(const GameSpec&) const = default;
};

struct BoxSpec {
  std::int64_t k = 1;
  std::int64_t r_max = 32;
  std::vector<std::int64_t> radii;  // ball union instead of full quotients
  bool operator==(const BoxSpec&) const = default;
};

struct AsdimSpec {
  std::int64_t r = 1;
  std::int64_t bound = 1;
  bool exact = true;
  bool operator==(const AsdimSpec&) const = default;
};

struct MapSpec {
  std::vector<Element> target_generators;  // same group with another generating set
  std::int64_t C = 0;
  std::int64_t floor_divisor = 1;  // properness floor t -> floor(t / divisor)
  bool operator==(const MapSpec&) const = default;
};

struct TransformSpec {
  std::string direction = "ordinary-to-full";  // or full-to-ordinary
  std::vector<std::int64_t> gaps;               // stages of the generated input
  std::string input;                            // artifact path, relative to the config file
  bool operator==(const TransformSpec&) const = default;
};

struct Scenario {
  GroupSpec group;
  ChainSpec chain;
  RegionSpec region;
  GameSpec game;
  BoxSpec box;
  AsdimSpec asdim;
  MapSpec map;
  TransformSpec transform;
  std::string base_dir;  // directory of the config file; not serialized
  bool operator==(const Scenario& o) const {
    return group == o.group && chain == o.chain && region == o.region && game == o.game && box == o.box &&
           asdim == o.asdim && map == o.map && transform == o.transform;
  }
};

Scenario parse_scenario(const Config& cfg);
Config scenario_config(const Scenario& s);
// Canonical text of the scenario; parse(text) gives back the same scenario.
std::string scenario_text(const Scenario& s);

GroupModel build_group(const GroupSpec& spec);
GroupModel build_group(const GroupSpec& spec, const std::vector<Element>& generators);
NormalChain build_chain(const ChainSpec& spec, const GroupModel& g);
Strategy build_strategy(const GameSpec& spec, const GroupModel& g);

}  // namespace boxfdc::cli
