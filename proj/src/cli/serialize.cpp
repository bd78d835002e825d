#include <boxfdc/cli/serialize.hpp>

namespace boxfdc::cli {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T value(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(std::string("field '") + key + "' has the wrong type");
  }
}

void expect_schema(const Json& j, const char* schema) {
  const auto got = value<std::string>(j, "schema");
  if (got != schema) throw SchemaError("schema is '" + got + "', expected '" + schema + "'");
}

Json dists(const std::vector<Dist>& v) { return Json(v); }

}  // namespace

Json subset_to_json(const PointSubset& s, const GroupWindow& window) {
  if (s.carrier() != window.space()) throw CarrierMismatch();
  Json out = Json::array();
  for (auto p : s.points()) out.push_back(window.element_of(p));
  return out;
}

PointSubset subset_from_json(const Json& j, const GroupWindow& window) {
  if (!j.is_array()) throw SchemaError("a subset must be an array of elements");
  PointSubset s(window.space());
  for (const auto& e : j) {
    Element el;
    try {
      el = e.get<Element>();
    } catch (const nlohmann::json::exception&) {
      throw SchemaError("an element must be an array of integers");
    }
    auto p = window.find(el);
    if (!p) throw SchemaError("element " + format_element(el) + " is not in the window");
    s.insert(*p);
  }
  return s;
}

Json decomposition_to_json(const Decomposition& d, const GroupWindow& window) {
  Json colors = Json::array();
  for (int c = 0; c < 2; ++c) {
    Json pieces = Json::array();
    for (const auto& p : d.color(c).pieces()) pieces.push_back(subset_to_json(p, window));
    colors.push_back(std::move(pieces));
  }
  return Json{{"region", subset_to_json(d.region(), window)}, {"colors", std::move(colors)}};
}

Decomposition decomposition_from_json(const Json& j, const GroupWindow& window) {
  Decomposition d(subset_from_json(field(j, "region"), window));
  const auto& colors = field(j, "colors");
  if (!colors.is_array() || colors.size() != 2) throw SchemaError("'colors' must hold exactly two piece lists");
  for (int c = 0; c < 2; ++c) {
    if (!colors[c].is_array()) throw SchemaError("a color must be an array of pieces");
    for (const auto& p : colors[c]) d.add(c, subset_from_json(p, window));
  }
  return d;
}

Json sequence_to_json(const DecompositionSequence& seq, const std::string& kind, const GroupWindow& window) {
  Json stages = Json::array();
  for (const auto& st : seq.stages) {
    Json parts = Json::array();
    for (const auto& part : st.parts) parts.push_back(decomposition_to_json(part, window));
    stages.push_back(Json{{"bound", st.bound}, {"parts", std::move(parts)}});
  }
  return Json{{"schema", kSequenceSchema},
              {"kind", kind},
              {"start", subset_to_json(seq.start, window)},
              {"stages", std::move(stages)}};
}

DecompositionSequence sequence_from_json(const Json& j, const GroupWindow& window, std::string* kind) {
  expect_schema(j, kSequenceSchema);
  const auto k = value<std::string>(j, "kind");
  if (k != "ordinary" && k != "full") throw SchemaError("sequence kind must be 'ordinary' or 'full'");
  if (kind) *kind = k;
  DecompositionSequence seq(subset_from_json(field(j, "start"), window));
  const auto& stages = field(j, "stages");
  if (!stages.is_array()) throw SchemaError("'stages' must be an array");
  for (const auto& st : stages) {
    DecompositionStage stage;
    stage.bound = value<Dist>(st, "bound");
    const auto& parts = field(st, "parts");
    if (!parts.is_array()) throw SchemaError("'parts' must be an array");
    for (const auto& part : parts) stage.parts.push_back(decomposition_from_json(part, window));
    seq.stages.push_back(std::move(stage));
  }
  return seq;
}

Json transcript_to_json(const GameTranscript& t, const GroupWindow& window) {
  auto family = [&](const std::vector<PointSubset>& f) {
    Json out = Json::array();
    for (const auto& p : f) out.push_back(subset_to_json(p, window));
    return out;
  };
  Json rounds = Json::array();
  for (const auto& r : t.rounds) {
    Json proposals = Json::array();
    for (const auto& d : r.proposals) proposals.push_back(decomposition_to_json(d, window));
    rounds.push_back(Json{{"gap", r.gap},
                          {"proposals", std::move(proposals)},
                          {"verified", r.verified},
                          {"verdicts", r.verdicts},
                          {"max_diameter", r.max_diameter}});
  }
  return Json{{"schema", kTranscriptSchema},
              {"strategy", t.strategy},
              {"strategy_params", t.strategy_params},
              {"bound", t.bound},
              {"challenge", dists(t.challenge)},
              {"initial", family(t.initial)},
              {"initial_max_diameter", t.initial_max_diameter},
              {"rounds", std::move(rounds)},
              {"final_family", family(t.final_family)},
              {"won", t.won},
              {"won_round", t.won_round},
              {"reason", t.reason},
              {"outcome", t.outcome()}};
}

GameTranscript transcript_from_json(const Json& j, const GroupWindow& window) {
  expect_schema(j, kTranscriptSchema);
  GameTranscript t;
  t.strategy = value<std::string>(j, "strategy");
  t.strategy_params = value<std::map<std::string, std::string>>(j, "strategy_params");
  t.bound = value<Dist>(j, "bound");
  t.challenge = value<std::vector<Dist>>(j, "challenge");
  auto family = [&](const char* key) {
    std::vector<PointSubset> out;
    const auto& arr = field(j, key);
    if (!arr.is_array()) throw SchemaError(std::string("'") + key + "' must be an array");
    for (const auto& p : arr) out.push_back(subset_from_json(p, window));
    return out;
  };
  t.initial = family("initial");
  t.initial_max_diameter = value<Dist>(j, "initial_max_diameter");
  const auto& rounds = field(j, "rounds");
  if (!rounds.is_array()) throw SchemaError("'rounds' must be an array");
  for (const auto& r : rounds) {
    RoundRecord rec;
    rec.gap = value<Dist>(r, "gap");
    for (const auto& d : field(r, "proposals")) rec.proposals.push_back(decomposition_from_json(d, window));
    rec.verified = value<std::vector<bool>>(r, "verified");
    rec.verdicts = value<std::vector<std::string>>(r, "verdicts");
    rec.max_diameter = value<Dist>(r, "max_diameter");
    t.rounds.push_back(std::move(rec));
  }
  t.final_family = family("final_family");
  t.won = value<bool>(j, "won");
  t.won_round = value<std::size_t>(j, "won_round");
  t.reason = value<std::string>(j, "reason");
  return t;
}

const Json& artifact_of(const Json& file) {
  if (!file.is_object()) return file;
  if (file.contains("artifact")) return file.at("artifact");
  if (file.contains("result") && file.at("result").is_object() && file.at("result").contains("artifact"))
    return file.at("result").at("artifact");
  return file;
}

}  // namespace boxfdc::cli
