#include <boxfdc/cli/scenario.hpp>
#include <boxfdc/finite_groups.hpp>

#include <algorithm>
#include <charconv>
#include <sstream>

namespace boxfdc::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::int64_t to_int(const std::string& s, const std::string& context) {
  std::int64_t v = 0;
  const auto t = trim(s);
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty())
    throw ConfigError("bad integer '" + t + "' in element '" + context + "'");
  return v;
}

std::string int_list_text(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

// Re-raise element syntax errors with the config position.
template <class F>
auto at(const Config& cfg, const std::string& section, const std::string& key, F&& f) {
  try {
    return f();
  } catch (const ConfigError& e) {
    cfg.fail(section, key, e.what());
  }
}

std::vector<Element> elements_at(const Config& cfg, const std::string& section, const std::string& key) {
  return at(cfg, section, key, [&] { return parse_element_list(cfg.get_string(section, key, "")); });
}

Element element_at(const Config& cfg, const std::string& section, const std::string& key) {
  return at(cfg, section, key, [&] {
    auto v = cfg.get(section, key);
    return v ? parse_element(*v) : Element{};
  });
}

void require_one_of(const Config& cfg, const std::string& section, const std::string& key, const std::string& value,
                    std::initializer_list<const char*> allowed) {
  for (const auto* a : allowed)
    if (value == a) return;
  std::string list;
  for (const auto* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  cfg.fail(section, key, "unknown value '" + value + "' (expected one of " + list + ")");
}

}  // namespace

Element parse_element(const std::string& raw) {
  const auto text = trim(raw);
  if (text.empty()) throw ConfigError("empty element");
  Element e;
  if (text.front() == '(' || text.front() == '[') {
    const char close = text.front() == '(' ? ')' : ']';
    if (text.back() != close) throw ConfigError("unbalanced element '" + text + "'");
    std::string body = text.substr(1, text.size() - 2);
    if (text.front() == '[') {
      std::istringstream in(body);
      std::string tok;
      while (in >> tok) e.push_back(to_int(tok, text));
    } else {
      std::stringstream in(body);
      std::string tok;
      while (std::getline(in, tok, ',')) e.push_back(to_int(tok, text));
    }
    if (e.empty()) throw ConfigError("empty element '" + text + "'");
    return e;
  }
  e.push_back(to_int(text, text));
  return e;
}

std::vector<Element> parse_element_list(const std::string& text) {
  std::vector<Element> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';'))
    if (!trim(item).empty()) out.push_back(parse_element(item));
  return out;
}

std::string element_text(const Element& e, bool permutation) {
  std::string out;
  if (permutation) {
    for (std::size_t i = 0; i < e.size(); ++i) out += (i ? " " : "") + std::to_string(e[i]);
    return "[" + out + "]";
  }
  if (e.size() == 1) return std::to_string(e[0]);
  for (std::size_t i = 0; i < e.size(); ++i) out += (i ? "," : "") + std::to_string(e[i]);
  return "(" + out + ")";
}

std::string element_list_text(const std::vector<Element>& elems, bool permutation) {
  std::string out;
  for (std::size_t i = 0; i < elems.size(); ++i) out += (i ? ";" : "") + element_text(elems[i], permutation);
  return out;
}

Scenario parse_scenario(const Config& cfg) {
  for (const auto& [name, entries] : cfg.sections()) {
    static const std::map<std::string, std::vector<std::string>> known = {
        {"group", {"kind", "rank", "order", "index", "degree", "generators", "search_radius"}},
        {"chain", {"kind", "base", "depth"}},
        {"region", {"kind", "radius", "low", "high"}},
        {"game", {"strategy", "challenge", "bound", "axes", "period", "chain_index", "subgroup"}},
        {"box", {"k", "r_max", "radii"}},
        {"asdim", {"r", "bound", "exact"}},
        {"map", {"target_generators", "C", "floor_divisor"}},
        {"transform", {"direction", "gaps", "input"}}};
    auto it = known.find(name);
    if (it == known.end()) {
      const auto line = entries.empty() ? 0 : entries.begin()->second.line;
      throw ConfigError(cfg.source + (line ? ":" + std::to_string(line) : "") + ": unknown section [" + name + "]");
    }
    for (const auto& [key, e] : entries) {
      const bool chain_member = name == "chain" && key.size() > 1 && key[0] == 'n' &&
                                key.find_first_not_of("0123456789", 1) == std::string::npos;
      if (!chain_member && std::find(it->second.begin(), it->second.end(), key) == it->second.end())
        cfg.fail(name, key, "unknown key");
    }
  }

  Scenario s;
  auto& g = s.group;
  g.kind = cfg.get_string("group", "kind", g.kind);
  require_one_of(cfg, "group", "kind", g.kind,
                 {"lattice", "cyclic", "dihedral", "dicyclic", "symmetric", "alternating", "permutation", "small"});
  g.rank = cfg.get_int("group", "rank", g.rank);
  g.order = cfg.get_int("group", "order", g.order);
  g.index = cfg.get_int("group", "index", g.index);
  g.degree = cfg.get_int("group", "degree", g.degree);
  g.generators = elements_at(cfg, "group", "generators");
  g.search_radius = cfg.get_int("group", "search_radius", g.search_radius);
  if (g.kind == "lattice" && g.rank < 1) cfg.fail("group", "rank", "lattice rank must be positive");

  auto& c = s.chain;
  c.kind = cfg.get_string("chain", "kind", c.kind);
  require_one_of(cfg, "chain", "kind", c.kind, {"none", "powers", "explicit"});
  c.base = cfg.get_int("chain", "base", c.base);
  c.depth = cfg.get_int("chain", "depth", c.depth);
  for (std::int64_t i = 1; cfg.has("chain", "n" + std::to_string(i)); ++i)
    c.subgroups.push_back(elements_at(cfg, "chain", "n" + std::to_string(i)));

  auto& r = s.region;
  r.kind = cfg.get_string("region", "kind", r.kind);
  require_one_of(cfg, "region", "kind", r.kind, {"whole", "ball", "box"});
  r.radius = cfg.get_int("region", "radius", r.radius);
  r.low = element_at(cfg, "region", "low");
  r.high = element_at(cfg, "region", "high");

  auto& gm = s.game;
  gm.strategy = cfg.get_string("game", "strategy", gm.strategy);
  require_one_of(cfg, "game", "strategy", gm.strategy,
                 {"interval", "coordinate-peel", "coset", "periodic-interval", "no-split"});
  gm.challenge = cfg.get_int_list("game", "challenge");
  gm.bound = cfg.get_int("game", "bound", gm.bound);
  gm.axes = cfg.get_int_list("game", "axes");
  gm.period = cfg.get_int("game", "period", gm.period);
  gm.chain_index = cfg.get_int("game", "chain_index", gm.chain_index);
  gm.subgroup = elements_at(cfg, "game", "subgroup");

  s.box.k = cfg.get_int("box", "k", s.box.k);
  s.box.r_max = cfg.get_int("box", "r_max", s.box.r_max);
  s.box.radii = cfg.get_int_list("box", "radii");

  s.asdim.r = cfg.get_int("asdim", "r", s.asdim.r);
  s.asdim.bound = cfg.get_int("asdim", "bound", s.asdim.bound);
  s.asdim.exact = cfg.get_bool("asdim", "exact", s.asdim.exact);

  s.map.target_generators = elements_at(cfg, "map", "target_generators");
  s.map.C = cfg.get_int("map", "C", s.map.C);
  s.map.floor_divisor = cfg.get_int("map", "floor_divisor", s.map.floor_divisor);
  if (s.map.floor_divisor < 1) cfg.fail("map", "floor_divisor", "must be positive");

  auto& t = s.transform;
  t.direction = cfg.get_string("transform", "direction", t.direction);
  require_one_of(cfg, "transform", "direction", t.direction, {"ordinary-to-full", "full-to-ordinary"});
  t.gaps = cfg.get_int_list("transform", "gaps");
  t.input = cfg.get_string("transform", "input", t.input);
  return s;
}

Config scenario_config(const Scenario& s) {
  Config cfg;
  const bool perm = s.group.kind == "permutation";
  const auto& g = s.group;
  cfg.set("group", "kind", g.kind);
  cfg.set("group", "rank", std::to_string(g.rank));
  cfg.set("group", "order", std::to_string(g.order));
  cfg.set("group", "index", std::to_string(g.index));
  cfg.set("group", "degree", std::to_string(g.degree));
  cfg.set("group", "generators", element_list_text(g.generators, perm));
  cfg.set("group", "search_radius", std::to_string(g.search_radius));

  cfg.set("chain", "kind", s.chain.kind);
  cfg.set("chain", "base", std::to_string(s.chain.base));
  cfg.set("chain", "depth", std::to_string(s.chain.depth));
  for (std::size_t i = 0; i < s.chain.subgroups.size(); ++i)
    cfg.set("chain", "n" + std::to_string(i + 1), element_list_text(s.chain.subgroups[i], perm));

  cfg.set("region", "kind", s.region.kind);
  cfg.set("region", "radius", std::to_string(s.region.radius));
  if (!s.region.low.empty()) cfg.set("region", "low", element_text(s.region.low, false));
  if (!s.region.high.empty()) cfg.set("region", "high", element_text(s.region.high, false));

  const auto& gm = s.game;
  cfg.set("game", "strategy", gm.strategy);
  cfg.set("game", "challenge", int_list_text(gm.challenge));
  cfg.set("game", "bound", std::to_string(gm.bound));
  cfg.set("game", "axes", int_list_text(gm.axes));
  cfg.set("game", "period", std::to_string(gm.period));
  cfg.set("game", "chain_index", std::to_string(gm.chain_index));
  cfg.set("game", "subgroup", element_list_text(gm.subgroup, perm));

  cfg.set("box", "k", std::to_string(s.box.k));
  cfg.set("box", "r_max", std::to_string(s.box.r_max));
  cfg.set("box", "radii", int_list_text(s.box.radii));

  cfg.set("asdim", "r", std::to_string(s.asdim.r));
  cfg.set("asdim", "bound", std::to_string(s.asdim.bound));
  cfg.set("asdim", "exact", s.asdim.exact ? "true" : "false");

  cfg.set("map", "target_generators", element_list_text(s.map.target_generators, perm));
  cfg.set("map", "C", std::to_string(s.map.C));
  cfg.set("map", "floor_divisor", std::to_string(s.map.floor_divisor));

  cfg.set("transform", "direction", s.transform.direction);
  cfg.set("transform", "gaps", int_list_text(s.transform.gaps));
  cfg.set("transform", "input", s.transform.input);
  return cfg;
}

std::string scenario_text(const Scenario& s) { return scenario_config(s).text(); }

GroupModel build_group(const GroupSpec& spec) { return build_group(spec, spec.generators); }

GroupModel build_group(const GroupSpec& spec, const std::vector<Element>& gens) {
  const auto n = static_cast<std::size_t>(spec.order);
  if (spec.kind == "lattice") {
    if (gens.empty()) return GroupModel::integer_lattice(static_cast<std::size_t>(spec.rank), spec.search_radius);
    return GroupModel::integer_lattice(static_cast<std::size_t>(spec.rank), gens, spec.search_radius);
  }
  if (spec.kind != "permutation" && spec.kind != "small" && spec.order < 1)
    throw ConfigError("[group] order must be positive for kind " + spec.kind);
  if (spec.kind == "cyclic") return cyclic_group(n);
  if (spec.kind == "dihedral") return dihedral_group(n);
  if (spec.kind == "dicyclic") return dicyclic_group(n);
  if (spec.kind == "symmetric") return symmetric_group(n);
  if (spec.kind == "alternating") return alternating_group(n);
  if (spec.kind == "permutation") {
    if (spec.degree < 1) throw ConfigError("[group] degree must be positive for permutation groups");
    std::vector<std::vector<std::size_t>> perms;
    for (const auto& e : gens) perms.emplace_back(e.begin(), e.end());
    return GroupModel::permutation_group(static_cast<std::size_t>(spec.degree), perms);
  }
  if (spec.kind == "small") {
    if (spec.order < 1 || spec.order > 24) throw ConfigError("[group] small groups are listed up to order 24");
    std::vector<GroupModel> same;
    for (auto& g : small_groups(n))
      if (g.order() == n) same.push_back(g);
    if (spec.index < 0 || static_cast<std::size_t>(spec.index) >= same.size())
      throw ConfigError("[group] index out of range: order " + std::to_string(n) + " has " +
                        std::to_string(same.size()) + " groups");
    return same[static_cast<std::size_t>(spec.index)];
  }
  throw ConfigError("[group] unknown kind " + spec.kind);
}

NormalChain build_chain(const ChainSpec& spec, const GroupModel& g) {
  if (spec.kind == "powers") {
    if (spec.depth < 1) throw ConfigError("[chain] depth must be positive");
    return NormalChain::powers(g, spec.base, static_cast<std::size_t>(spec.depth));
  }
  if (spec.kind == "explicit") {
    if (spec.subgroups.empty()) throw ConfigError("[chain] explicit chains need n1, n2, ...");
    std::vector<Subgroup> subs;
    for (const auto& gens : spec.subgroups) subs.push_back(Subgroup::generated_by(g, gens));
    return NormalChain(g, std::move(subs));
  }
  throw ConfigError("[chain] this command needs a chain (kind = powers or explicit)");
}

Strategy build_strategy(const GameSpec& spec, const GroupModel& g) {
  if (spec.strategy == "interval") return strategy_interval_z();
  if (spec.strategy == "coordinate-peel") {
    std::vector<std::size_t> axes;
    for (auto a : spec.axes) {
      if (a < 0) throw ConfigError("[game] axes must be non-negative");
      axes.push_back(static_cast<std::size_t>(a));
    }
    if (axes.empty())
      for (std::size_t a = g.rank(); a-- > 0;) axes.push_back(a);
    return strategy_coordinate_peel(axes);
  }
  if (spec.strategy == "coset") return strategy_coset(Subgroup::generated_by(g, spec.subgroup));
  if (spec.strategy == "periodic-interval") {
    if (spec.chain_index < 1) throw ConfigError("[game] periodic-interval needs chain_index >= 1");
    return strategy_periodic_interval(spec.period, static_cast<std::size_t>(spec.chain_index));
  }
  if (spec.strategy == "no-split") return strategy_no_split();
  throw ConfigError("[game] unknown strategy " + spec.strategy);
}

}  // namespace boxfdc::cli
