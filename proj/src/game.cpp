#include <boxfdc/errors.hpp>
#include <boxfdc/game.hpp>

#include <algorithm>

namespace boxfdc {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Decomposition unchanged(const PointSubset& piece) {
  Decomposition d(piece);
  d.add(0, piece);
  return d;
}

// Pieces grouped by block index along one coordinate; even blocks get color 0.
Decomposition blocks_along(const GroupWindow& window, const PointSubset& piece, std::size_t axis, std::int64_t width) {
  std::map<std::int64_t, PointSubset> blocks;
  for (auto p : piece.points()) {
    const auto& e = window.element_of(p);
    if (axis >= e.size()) throw PreconditionError("axis out of range for this group");
    const auto b = floor_div(e[axis], width);
    blocks.try_emplace(b, piece.carrier()).first->second.insert(p);
  }
  Decomposition d(piece);
  for (auto& [b, s] : blocks) d.add(static_cast<int>(((b % 2) + 2) % 2), std::move(s));
  return d;
}

Dist family_max_diameter(const std::vector<PointSubset>& family) {
  Dist best = 0;
  for (const auto& p : family) best = std::max(best, diameter(p));
  return best;
}

}  // namespace

Challenge::Challenge(std::vector<Dist> rounds) : rounds_(std::move(rounds)) {
  for (std::size_t i = 0; i < rounds_.size(); ++i) {
    if (rounds_[i] == 0) throw PreconditionError("challenge gaps must be positive");
    if (i > 0 && rounds_[i] < rounds_[i - 1])
      throw PreconditionError("challenge must not decrease; round " + std::to_string(i + 1) + " does");
  }
}

bool Challenge::strictly_increasing() const {
  for (std::size_t i = 1; i < rounds_.size(); ++i)
    if (rounds_[i] <= rounds_[i - 1]) return false;
  return true;
}

Strategy strategy_interval_z() {
  return Strategy{"interval", {},
                  [](const GroupWindow& w, const PointSubset& piece, Dist R, std::size_t) {
                    return interval_decomposition_z(w, piece, R);
                  },
                  std::nullopt};
}

Strategy strategy_coordinate_peel(std::vector<std::size_t> axes) {
  std::string order;
  for (auto a : axes) order += (order.empty() ? "" : ",") + std::to_string(a);
  return Strategy{"coordinate-peel",
                  {{"axes", order}},
                  [axes](const GroupWindow& w, const PointSubset& piece, Dist R, std::size_t round) {
                    if (round == 0 || round > axes.size()) return unchanged(piece);
                    return blocks_along(w, piece, axes[round - 1], R);
                  },
                  std::nullopt};
}

Strategy strategy_coset(const Subgroup& sub) {
  return Strategy{"coset",
                  {{"subgroup", sub.describe()}},
                  [sub](const GroupWindow& w, const PointSubset& piece, Dist R, std::size_t) {
                    return coset_decomposition(w, piece, sub, R);
                  },
                  std::nullopt};
}

Strategy strategy_periodic_interval(std::int64_t period, std::size_t chain_index) {
  if (period < 2 || period % 2 != 0) throw PreconditionError("periodic strategy needs an even period >= 2");
  return Strategy{"periodic-interval",
                  {{"period", std::to_string(period)}, {"chain_index", std::to_string(chain_index)}},
                  [period](const GroupWindow& w, const PointSubset& piece, Dist, std::size_t) {
                    if (w.group().kind() != GroupKind::integer_lattice || w.group().rank() != 1)
                      throw PreconditionError("periodic strategy needs Z");
                    return blocks_along(w, piece, 0, period / 2);
                  },
                  chain_index};
}

Strategy strategy_no_split() {
  return Strategy{"no-split",
                  {},
                  [](const GroupWindow&, const PointSubset& piece, Dist, std::size_t) { return unchanged(piece); },
                  std::nullopt};
}

// ---------------------------------------------------------------------------

std::string GameTranscript::outcome() const {
  if (won) return "won at round " + std::to_string(won_round);
  return "lost: " + reason;
}

GameTranscript play(const GroupWindow& window, const std::vector<PointSubset>& initial, const Challenge& ch,
                    const Strategy& s, Dist B) {
  GameTranscript t;
  t.strategy = s.name;
  t.strategy_params = s.params;
  t.bound = B;
  t.challenge = ch.rounds();
  t.initial = initial;
  for (const auto& p : initial)
    if (p.carrier() != window.space()) throw CarrierMismatch();
  t.initial_max_diameter = family_max_diameter(initial);

  std::vector<PointSubset> family = initial;
  if (t.initial_max_diameter <= B) {
    t.won = true;
    t.won_round = 0;
    t.final_family = family;
    return t;
  }
  for (std::size_t i = 0; i < ch.size(); ++i) {
    const Dist R = ch.rounds()[i];
    RoundRecord rec;
    rec.gap = R;
    std::vector<PointSubset> next;
    bool valid = true;
    for (const auto& piece : family) {
      Decomposition d(piece);
      try {
        d = s.propose(window, piece, R, i + 1);
      } catch (const Error& e) {
        t.rounds.push_back(std::move(rec));
        t.reason = "strategy failed at round " + std::to_string(i + 1) + ": " + e.what();
        t.final_family = family;
        return t;
      }
      auto v = verify_ordinary(d, R);
      rec.verified.push_back(v.passed);
      rec.verdicts.push_back(v.describe());
      valid = valid && v.passed;
      for (int c = 0; c < 2; ++c)
        for (const auto& p : d.color(c).pieces()) next.push_back(p);
      rec.proposals.push_back(std::move(d));
    }
    rec.max_diameter = family_max_diameter(next);
    t.rounds.push_back(std::move(rec));
    if (!valid) {
      t.reason = "invalid proposal at round " + std::to_string(i + 1);
      t.final_family = family;
      return t;
    }
    family = std::move(next);
    if (t.rounds.back().max_diameter <= B) {
      t.won = true;
      t.won_round = i + 1;
      t.final_family = family;
      return t;
    }
  }
  t.reason = "no bounded family within " + std::to_string(ch.size()) + " round(s)";
  t.final_family = family;
  return t;
}

SfdcResult sfdc_check(const GroupWindow& window, const std::vector<PointSubset>& initial, const Challenge& ch,
                      const Strategy& s, Dist B) {
  if (!ch.strictly_increasing()) throw PreconditionError("a straight challenge sequence must increase strictly");
  SfdcResult r;
  r.transcript = play(window, initial, ch, s, B);
  if (r.transcript.won) r.m = r.transcript.won_round;
  return r;
}

EquivariantVerdict equivariant_sfdc_check(const GroupWindow& window, const NormalChain& chain, const Challenge& ch,
                                          const Strategy& s, Dist B) {
  EquivariantVerdict v;
  if (!window.group().same_as(chain.parent())) throw PreconditionError("window and chain use different groups");
  v.sfdc = sfdc_check(window, {window.all()}, ch, s, B);
  v.m = v.sfdc.m;
  if (!v.m) {
    v.reason = "no bounded stage: " + v.sfdc.transcript.outcome();
    return v;
  }
  const Subgroup acting =
      s.acting_index ? chain.subgroup(*s.acting_index) : Subgroup::trivial(window.group());
  if (s.acting_index) v.K = s.acting_index;
  if (*v.m > 0) {
    const auto& last = v.sfdc.transcript.rounds[*v.m - 1];
    for (const auto& d : last.proposals) {
      v.invariance.push_back(verify_invariance(d, InvarianceSpec{window, acting}));
      if (!v.invariance.back() && v.reason.empty()) v.reason = "final round not invariant: " + v.invariance.back().describe();
    }
  }
  v.passed = v.reason.empty();
  return v;
}

GameTranscript reverify(const GameTranscript& t) {
  GameTranscript out = t;
  out.won = false;
  out.won_round = 0;
  out.reason.clear();
  out.initial_max_diameter = family_max_diameter(t.initial);
  std::vector<PointSubset> family = t.initial;
  if (out.initial_max_diameter <= t.bound) {
    out.won = true;
    out.final_family = family;
    return out;
  }
  for (std::size_t i = 0; i < out.rounds.size(); ++i) {
    auto& rec = out.rounds[i];
    if (rec.proposals.size() != family.size()) {
      out.reason = "strategy failed at round " + std::to_string(i + 1) + ": transcript has " +
                   std::to_string(rec.proposals.size()) + " proposals for " + std::to_string(family.size()) +
                   " pieces";
      out.final_family = family;
      return out;
    }
    std::vector<PointSubset> next;
    bool valid = true;
    rec.verified.clear();
    rec.verdicts.clear();
    for (std::size_t j = 0; j < family.size(); ++j) {
      const auto& d = rec.proposals[j];
      bool ok = d.region() == family[j];
      auto v = verify_ordinary(d, rec.gap);
      ok = ok && v.passed;
      rec.verified.push_back(ok);
      rec.verdicts.push_back(d.region() == family[j] ? v.describe() : "proposal region does not match the piece");
      valid = valid && ok;
      for (int c = 0; c < 2; ++c)
        for (const auto& p : d.color(c).pieces()) next.push_back(p);
    }
    rec.max_diameter = family_max_diameter(next);
    if (!valid) {
      out.reason = "invalid proposal at round " + std::to_string(i + 1);
      out.final_family = family;
      return out;
    }
    family = std::move(next);
    if (rec.max_diameter <= t.bound) {
      out.won = true;
      out.won_round = i + 1;
      out.final_family = family;
      return out;
    }
  }
  out.reason = "no bounded family within " + std::to_string(t.challenge.size()) + " round(s)";
  out.final_family = family;
  return out;
}

}  // namespace boxfdc
