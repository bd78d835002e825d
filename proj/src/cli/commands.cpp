#include <boxfdc/asdim.hpp>
#include <boxfdc/box_space.hpp>
#include <boxfdc/cli/cache.hpp>
#include <boxfdc/cli/commands.hpp>
#include <boxfdc/cli/scenario.hpp>
#include <boxfdc/coarse_maps.hpp>
#include <boxfdc/finite_groups.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

namespace boxfdc::cli {

namespace fs = std::filesystem;

namespace {

class Clock {
 public:
  void mark(const std::string& phase) {
    const auto now = std::chrono::steady_clock::now();
    phases_[phase] = std::chrono::duration<double, std::milli>(now - last_).count();
    last_ = now;
  }
  Json json() const {
    Json j = phases_;
    j["total"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    return j;
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now(), last_ = start_;
  std::map<std::string, double> phases_;
};

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Context {
  const CommandOptions& opts;
  Scenario scenario;
  GroupModel group;
  DistanceCache cache;
  Clock clock;
  Json timing = Json::object();
  std::string input_text;  // artifact contents, part of the digest

  Context(const CommandOptions& o, Scenario s)
      : opts(o),
        scenario(std::move(s)),
        group(build_group(scenario.group)),
        cache(o.cache_dir ? fs::path(*o.cache_dir) : default_cache_dir()) {}

  bool permutation() const { return scenario.group.kind == "permutation"; }

  std::vector<Element> region_elements(const GroupModel& g) const {
    const auto& r = scenario.region;
    if (r.kind == "ball") {
      if (r.radius < 1) throw ConfigError("[region] ball radius must be positive");
      return g.ball(r.radius);
    }
    if (r.kind == "box") {
      if (r.low.empty() || r.high.empty()) throw ConfigError("[region] box needs low and high corners");
      return GroupWindow::box(g, r.low, r.high).elements();
    }
    if (!g.is_finite()) throw ConfigError("[region] kind = whole needs a finite group; use ball or box");
    return g.elements();
  }

  GroupWindow window() { return window_for(group, scenario.group); }

  GroupWindow window_for(const GroupModel& g, const GroupSpec& spec) {
    Config key_cfg;
    const auto full = scenario_config(scenario);
    for (const auto& [k, e] : full.sections().at("group")) key_cfg.set("group", k, e.value);
    key_cfg.set("group", "generators", element_list_text(spec.generators, permutation()));
    auto w = cache.window(g, key_cfg.text(), region_elements(g));
    timing["cache_hits"] = timing.value("cache_hits", 0) + (cache.last_hit() ? 1 : 0);
    timing["cache_misses"] = timing.value("cache_misses", 0) + (cache.last_hit() ? 0 : 1);
    clock.mark("window");
    return w;
  }

  Dist game_bound() const {
    const auto b = opts.bound.value_or(scenario.game.bound);
    if (b < 0) throw ConfigError("bound must be non-negative");
    return static_cast<Dist>(b);
  }

  Challenge challenge() const {
    std::vector<Dist> rounds;
    for (auto r : scenario.game.challenge) {
      if (r < 1) throw ConfigError("[game] challenge gaps must be positive");
      rounds.push_back(static_cast<Dist>(r));
    }
    if (rounds.empty()) throw ConfigError("[game] challenge is empty");
    try {
      return Challenge(rounds);
    } catch (const PreconditionError& e) {
      throw ConfigError(std::string("[game] challenge: ") + e.what());
    }
  }

  std::string artifact_path() const {
    if (opts.input_path) return *opts.input_path;
    if (scenario.transform.input.empty()) return {};
    fs::path p(scenario.transform.input);
    if (p.is_relative() && !scenario.base_dir.empty()) p = fs::path(scenario.base_dir) / p;
    return p.string();
  }

  Json elements_json(const PointSubset& s, const GroupWindow& w) const { return subset_to_json(s, w); }
};

Json table_json(const std::map<Dist, Dist>& m) {
  Json out = Json::array();
  for (const auto& [t, v] : m) out.push_back(Json::array({t, v}));
  return out;
}

// ---------------------------------------------------------------------------

int cmd_build_box(Context& ctx, Json& result) {
  const auto chain = build_chain(ctx.scenario.chain, ctx.group);
  const auto& spec = ctx.scenario.box;
  BoxSpace box;
  if (!spec.radii.empty()) {
    box = build_ball_union(chain, spec.radii);
    result["mode"] = "ball-union";
    result["radii"] = spec.radii;
  } else {
    if (spec.k < 1) throw ConfigError("[box] k must be positive");
    box = build_box(chain, static_cast<std::size_t>(spec.k));
    result["mode"] = "quotients";
  }
  ctx.clock.mark("build");
  const auto violation = box.space->find_violation();
  ctx.clock.mark("validate");
  Json pieces = Json::array();
  for (std::size_t i = 1; i <= box.pieces(); ++i) {
    Json p{{"index", i}, {"size", box.piece_size[i - 1]}, {"diameter", box.diameters[i - 1]}};
    if (spec.r_max >= 1) p["injectivity_radius"] = injectivity_radius(chain, i, spec.r_max);
    pieces.push_back(std::move(p));
  }
  Json cross = Json::array();
  for (std::size_t i = 1; i <= box.pieces(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 1; j <= box.pieces(); ++j) row.push_back(i == j ? Json(nullptr) : Json(box.cross_distance(i, j)));
    cross.push_back(std::move(row));
  }
  result["points"] = box.space->size();
  result["pieces"] = std::move(pieces);
  result["cross_distances"] = std::move(cross);
  result["metric_valid"] = !violation.has_value();
  if (violation) {
    result["metric_violation"] = violation->describe();
    return kInternal;
  }
  return kPass;
}

int finish_game(Context& ctx, const GameTranscript& t, const GroupWindow& w, Json& result) {
  result["won"] = t.won;
  result["outcome"] = t.outcome();
  if (t.won) result["m"] = t.won_round;
  result["artifact"] = transcript_to_json(t, w);
  ctx.clock.mark("serialize");
  return t.won ? kPass : kNegative;
}

int cmd_play(Context& ctx, Json& result) {
  const auto w = ctx.window();
  const auto ch = ctx.challenge();
  const auto s = build_strategy(ctx.scenario.game, ctx.group);
  const auto t = play(w, {w.all()}, ch, s, ctx.game_bound());
  ctx.clock.mark("play");
  return finish_game(ctx, t, w, result);
}

int cmd_sfdc(Context& ctx, Json& result) {
  const auto w = ctx.window();
  const auto ch = ctx.challenge();
  const auto s = build_strategy(ctx.scenario.game, ctx.group);
  const auto r = sfdc_check(w, {w.all()}, ch, s, ctx.game_bound());
  ctx.clock.mark("play");
  result["m"] = r.m ? Json(*r.m) : Json(nullptr);
  return finish_game(ctx, r.transcript, w, result);
}

int cmd_equi_sfdc(Context& ctx, Json& result) {
  const auto chain = build_chain(ctx.scenario.chain, ctx.group);
  const auto w = ctx.window();
  const auto ch = ctx.challenge();
  const auto s = build_strategy(ctx.scenario.game, ctx.group);
  const auto v = equivariant_sfdc_check(w, chain, ch, s, ctx.game_bound());
  ctx.clock.mark("play");
  result["passed"] = v.passed;
  result["m"] = v.m ? Json(*v.m) : Json(nullptr);
  result["K"] = v.K ? Json(*v.K) : Json(nullptr);
  result["reason"] = v.reason;
  Json inv = Json::array();
  for (const auto& i : v.invariance) inv.push_back(i.describe());
  result["invariance"] = std::move(inv);
  result["artifact"] = transcript_to_json(v.sfdc.transcript, w);
  return v.passed ? kPass : kNegative;
}

Json sequence_verdict_json(const SequenceVerdict& v) {
  Json stages = Json::array();
  for (const auto& s : v.stages)
    stages.push_back(Json{{"stage", s.stage}, {"passed", s.passed}, {"bound", s.bound}, {"achieved", s.achieved},
                          {"detail", s.detail}});
  return Json{{"passed", v.passed}, {"stages", std::move(stages)}};
}

DecompositionSequence generate_sequence(const GroupWindow& w, const Strategy& s, const std::vector<std::int64_t>& gaps) {
  DecompositionSequence seq(w.all());
  for (std::size_t k = 0; k < gaps.size(); ++k) {
    if (gaps[k] < 1) throw ConfigError("[transform] gaps must be positive");
    DecompositionStage stage;
    stage.bound = static_cast<Dist>(gaps[k]);
    for (const auto& piece : seq.pieces_after(k)) stage.parts.push_back(s.propose(w, piece, stage.bound, k + 1));
    seq.stages.push_back(std::move(stage));
  }
  return seq;
}

int cmd_transform(Context& ctx, Json& result) {
  const auto w = ctx.window();
  const bool to_full = ctx.scenario.transform.direction == "ordinary-to-full";
  const std::string need = to_full ? "ordinary" : "full";
  std::string kind = need;
  std::optional<DecompositionSequence> input;
  if (!ctx.input_text.empty()) {
    Json file;
    try {
      file = Json::parse(ctx.input_text);
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError(std::string("input is not JSON: ") + e.what());
    }
    input = sequence_from_json(artifact_of(file), w, &kind);
    if (kind != need) throw SchemaError("input is a " + kind + " sequence; " + ctx.scenario.transform.direction + " needs " + need);
  } else {
    auto gaps = ctx.scenario.transform.gaps;
    if (gaps.empty()) {
      // random increasing gaps from the seed
      std::mt19937_64 rng(ctx.opts.seed.value_or(1));
      const auto stages = 1 + rng() % 3;
      std::int64_t g = 0;
      for (std::uint64_t i = 0; i < stages; ++i) gaps.push_back(g += 1 + static_cast<std::int64_t>(rng() % 10));
      result["generated_gaps"] = gaps;
    }
    auto ordinary = generate_sequence(w, build_strategy(ctx.scenario.game, ctx.group), gaps);
    input = to_full ? std::move(ordinary) : ordinary_to_full(ordinary);
  }
  ctx.clock.mark("input");
  check_sequence_shape(*input);
  const auto in_verdict = to_full ? verify_ordinary_sequence(*input) : verify_full_sequence(*input);
  result["input_verdict"] = sequence_verdict_json(in_verdict);
  result["input"] = sequence_to_json(*input, kind, w);
  if (!in_verdict) {
    for (const auto& s : in_verdict.stages)
      if (!s.passed) {
        result["error"] = "input stage " + std::to_string(s.stage) + " does not verify: " + s.detail;
        break;
      }
    return kUsage;
  }
  auto output = to_full ? ordinary_to_full(*input) : full_to_ordinary(*input);
  ctx.clock.mark("transform");
  const auto out_verdict = to_full ? verify_full_sequence(output) : verify_ordinary_sequence(output);
  ctx.clock.mark("verify");
  result["output_verdict"] = sequence_verdict_json(out_verdict);
  result["artifact"] = sequence_to_json(output, to_full ? "full" : "ordinary", w);
  return out_verdict ? kPass : kNegative;
}

int cmd_verify(Context& ctx, Json& result) {
  if (ctx.input_text.empty()) throw ConfigError("verify needs an artifact (--input or [transform] input)");
  const auto w = ctx.window();
  Json file;
  try {
    file = Json::parse(ctx.input_text);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("artifact is not JSON: ") + e.what());
  }
  const auto& art = artifact_of(file);
  if (!art.is_object() || !art.contains("schema") || !art["schema"].is_string()) throw SchemaError("artifact has no schema");
  const auto schema = art["schema"].get<std::string>();
  result["schema"] = schema;
  if (schema == kTranscriptSchema) {
    const auto stored = transcript_from_json(art, w);
    const auto again = reverify(stored);
    ctx.clock.mark("verify");
    result["stored_outcome"] = stored.outcome();
    result["outcome"] = again.outcome();
    result["matches_stored"] = stored.won == again.won && stored.won_round == again.won_round && stored.reason == again.reason;
    Json witnesses = Json::array();
    for (std::size_t i = 0; i < again.rounds.size(); ++i)
      for (std::size_t j = 0; j < again.rounds[i].verified.size(); ++j)
        if (!again.rounds[i].verified[j])
          witnesses.push_back(Json{{"round", i + 1}, {"proposal", j}, {"verdict", again.rounds[i].verdicts[j]}});
    result["witnesses"] = std::move(witnesses);
    return again.won ? kPass : kNegative;
  }
  if (schema == kSequenceSchema) {
    std::string kind;
    const auto seq = sequence_from_json(art, w, &kind);
    check_sequence_shape(seq);
    const auto v = kind == "full" ? verify_full_sequence(seq) : verify_ordinary_sequence(seq);
    ctx.clock.mark("verify");
    result["kind"] = kind;
    result["verdict"] = sequence_verdict_json(v);
    return v ? kPass : kNegative;
  }
  throw SchemaError("unknown artifact schema '" + schema + "'");
}

int cmd_asdim(Context& ctx, Json& result) {
  const auto w = ctx.window();
  const auto& spec = ctx.scenario.asdim;
  const auto B = ctx.opts.bound.value_or(spec.bound);
  if (spec.r < 1 || B < 0) throw ConfigError("[asdim] needs r >= 1 and bound >= 0");
  AsdimOptions o;
  o.exact = ctx.opts.exact.value_or(spec.exact);
  const auto r = asdim_at_scale(w.space(), w.all(), static_cast<Dist>(spec.r), static_cast<Dist>(B), o);
  ctx.clock.mark("solve");
  result["r"] = spec.r;
  result["B"] = B;
  result["exact"] = o.exact;
  result["n"] = r.n;
  result["optimal"] = r.optimal;
  result["lower_bound"] = r.lower_bound;
  result["budget_exceeded"] = r.budget_exceeded;
  result["nodes"] = r.nodes;
  Json fams = Json::array();
  for (const auto& f : r.families) {
    Json pieces = Json::array();
    for (const auto& p : f.pieces()) pieces.push_back(subset_to_json(p, w));
    fams.push_back(std::move(pieces));
  }
  result["families"] = std::move(fams);
  return kPass;
}

int cmd_profile_map(Context& ctx, Json& result) {
  const auto& spec = ctx.scenario.map;
  if (spec.target_generators.empty()) throw ConfigError("[map] target_generators is empty");
  if (ctx.scenario.group.kind != "lattice" && ctx.scenario.group.kind != "permutation")
    throw ConfigError("profile-map compares generating sets of a lattice or permutation group");
  auto target_spec = ctx.scenario.group;
  target_spec.generators = spec.target_generators;
  const auto target = build_group(target_spec);
  const auto a = ctx.window();
  const auto b = ctx.window_for(target, target_spec);
  const auto id = [](const Element& e) { return e; };
  const auto divisor = static_cast<Dist>(spec.floor_divisor);
  const auto v = check_coarse_equivalence(map_between(a, b, id), map_between(b, a, id), static_cast<Dist>(spec.C),
                                          [divisor](Dist t) { return t / divisor; });
  ctx.clock.mark("profile");
  auto profile = [](const ModulusReport& m) {
    return Json{{"rho1", table_json(m.rho1)},
                {"rho2", table_json(m.rho2)},
                {"rho1_envelope", table_json(m.rho1_envelope)},
                {"rho2_envelope", table_json(m.rho2_envelope)}};
  };
  result["passed"] = v.passed;
  result["forward"] = profile(v.forward);
  result["backward"] = profile(v.backward);
  result["forward_displacement"] = v.forward_displacement;
  result["backward_displacement"] = v.backward_displacement;
  result["floor"] = "t / " + std::to_string(spec.floor_divisor);
  result["verdict"] = v.passed ? "proper on the tested window with the given floor" : v.describe();
  return v.passed ? kPass : kNegative;
}

int cmd_associated_family(Context& ctx, Json& result) {
  const auto& g = ctx.group;
  if (!g.is_finite()) throw ConfigError("associated-family needs a finite group");
  const auto family = associated_family(g);
  Json members = Json::array();
  for (const auto& sq : family) {
    Dist diam = 0;
    for (std::size_t c = 0; c < sq.order(); ++c) diam = std::max(diam, static_cast<Dist>(sq.length_of(c)));
    members.push_back(Json{{"upper_order", sq.upper().elements().size()},
                           {"lower_order", sq.lower().elements().size()},
                           {"order", sq.order()},
                           {"diameter", diam}});
  }
  ctx.clock.mark("enumerate");
  std::size_t checked = 0, failed = 0;
  Json failures = Json::array();
  for (const auto& t : admissible_triples(g)) {
    const auto v = check_quotient_iso_metric(g, t.n0, {{t.upper, t.lower}}).front();
    ++checked;
    if (!v) {
      ++failed;
      failures.push_back(Json{{"n0_order", t.n0.elements().size()},
                              {"lower_order", t.lower.elements().size()},
                              {"upper_order", t.upper.elements().size()},
                              {"reason", v.reason}});
    }
  }
  ctx.clock.mark("quotient-iso");
  result["group_order"] = g.order();
  result["signature"] = group_signature(g);
  result["members"] = std::move(members);
  result["quotient_iso_checked"] = checked;
  result["quotient_iso_failed"] = failed;
  result["failures"] = std::move(failures);
  return failed == 0 ? kPass : kNegative;
}

using Handler = std::function<int(Context&, Json&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"build-box", cmd_build_box}, {"play", cmd_play},       {"sfdc", cmd_sfdc},
      {"equi-sfdc", cmd_equi_sfdc}, {"transform", cmd_transform}, {"verify", cmd_verify},
      {"asdim", cmd_asdim},         {"profile-map", cmd_profile_map}, {"associated-family", cmd_associated_family}};
  return h;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : handlers()) out.push_back(k);
    return out;
  }();
  return names;
}

CommandResult run_command(const std::string& name, const CommandOptions& options) {
  CommandResult res;
  res.report = Json{{"command", name}};
  res.timing = Json{{"command", name}};
  Clock total;
  auto fail = [&](int code, const std::string& msg) {
    res.exit_code = code;
    res.report["exit_code"] = code;
    res.report["status"] = code == kUsage ? "usage-error" : "internal-error";
    res.report["error"] = msg;
    res.timing["phases"] = total.json();
    return res;
  };
  const auto it = handlers().find(name);
  if (it == handlers().end()) return fail(kUsage, "unknown command '" + name + "'");

  std::optional<Context> ctx;
  try {
    Config cfg = options.config_text ? parse_config(*options.config_text, options.config_path.empty() ? "<config>" : options.config_path)
                                     : load_config(options.config_path);
    Scenario scenario = parse_scenario(cfg);
    if (!options.config_path.empty()) scenario.base_dir = fs::path(options.config_path).parent_path().string();
    ctx.emplace(options, std::move(scenario));
    std::string input_path = ctx->artifact_path();
    if (!input_path.empty() && (name == "transform" || name == "verify"))
      ctx->input_text = read_file(input_path, "artifact");

    std::string digest_src = name + "\n" + scenario_text(ctx->scenario);
    if (options.bound) digest_src += "bound=" + std::to_string(*options.bound) + "\n";
    if (options.seed) digest_src += "seed=" + std::to_string(*options.seed) + "\n";
    if (options.exact) digest_src += std::string("exact=") + (*options.exact ? "true" : "false") + "\n";
    digest_src += ctx->input_text;
    res.report["scenario_digest"] = sha256_hex(digest_src);
    res.report["scenario"] = scenario_text(ctx->scenario);
    if (options.bound) res.report["bound_override"] = *options.bound;
    if (options.seed) res.report["seed"] = *options.seed;
    ctx->clock.mark("setup");

    Json result = Json::object();
    int code = kPass;
    try {
      code = it->second(*ctx, result);
    } catch (...) {
      res.report["result"] = result;
      throw;
    }
    res.exit_code = code;
    res.report["exit_code"] = code;
    res.report["status"] = code == kPass ? "pass" : code == kNegative ? "fail" : code == kUsage ? "usage-error" : "internal-error";
    if (result.contains("error")) {
      res.report["error"] = result["error"];
      result.erase("error");
    }
    res.report["result"] = std::move(result);
    res.timing["phases"] = ctx->clock.json();
    for (const auto& [k, v] : ctx->timing.items()) res.timing[k] = v;
    res.timing["cache_dir"] = ctx->cache.dir().string();
    return res;
  } catch (const MetricAxiomError& e) {
    return fail(kInternal, e.what());
  } catch (const Error& e) {
    return fail(kUsage, e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, e.what());
  }
}

std::string report_text(const Json& report) { return report.dump(2) + "\n"; }

void write_outputs(const CommandResult& result, const CommandOptions& options) {
  if (!options.out_path) {
    std::cout << report_text(result.report);
    return;
  }
  auto write = [](const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + path);
    out << text;
  };
  write(*options.out_path, report_text(result.report));
  write(*options.out_path + ".timing.json", result.timing.dump(2) + "\n");
}

}  // namespace boxfdc::cli
