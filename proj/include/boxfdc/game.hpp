#pragma once

#include <boxfdc/box_space.hpp>
#include <boxfdc/decomposition.hpp>

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace boxfdc {

// Player 2's moves: positive, non-decreasing gaps. The straight checks below
// additionally need strict increase.
class Challenge {
 public:
  explicit Challenge(std::vector<Dist> rounds);
  bool strictly_increasing() const;
  const std::vector<Dist>& rounds() const { return rounds_; }
  std::size_t size() const { return rounds_.size(); }

 private:
  std::vector<Dist> rounds_;
};

// Player 1: decomposes one piece for a given gap. A strategy that cannot split
// a piece returns it unchanged as a single color-0 piece.
struct Strategy {
  using Propose = std::function<Decomposition(const GroupWindow&, const PointSubset& piece, Dist R, std::size_t round)>;
  std::string name;
  std::map<std::string, std::string> params;
  Propose propose;
  std::optional<std::size_t> acting_index;  // chain index K whose N_K the final round respects
};

Strategy strategy_interval_z();
// Round k slabs along axes[k-1]; later rounds pass pieces through.
Strategy strategy_coordinate_peel(std::vector<std::size_t> axes);
Strategy strategy_coset(const Subgroup& sub);
// Z split into blocks of length period/2 with alternating colors; invariant
// under period*Z, declared as chain index K.
Strategy strategy_periodic_interval(std::int64_t period, std::size_t chain_index);
Strategy strategy_no_split();

struct RoundRecord {
  Dist gap = 0;
  std::vector<Decomposition> proposals;
  std::vector<bool> verified;
  std::vector<std::string> verdicts;
  Dist max_diameter = 0;  // of the family after this round
};

struct GameTranscript {
  std::string strategy;
  std::map<std::string, std::string> strategy_params;
  Dist bound = 0;
  std::vector<Dist> challenge;
  std::vector<PointSubset> initial;
  Dist initial_max_diameter = 0;
  std::vector<RoundRecord> rounds;
  std::vector<PointSubset> final_family;
  bool won = false;
  std::size_t won_round = 0;
  std::string reason;
  std::string outcome() const;
};

GameTranscript play(const GroupWindow& window, const std::vector<PointSubset>& initial, const Challenge& ch,
                    const Strategy& s, Dist B);

struct SfdcResult {
  std::optional<std::size_t> m;
  GameTranscript transcript;
  explicit operator bool() const { return m.has_value(); }
};

SfdcResult sfdc_check(const GroupWindow& window, const std::vector<PointSubset>& initial, const Challenge& ch,
                      const Strategy& s, Dist B);

struct EquivariantVerdict {
  bool passed = false;
  std::optional<std::size_t> m;
  std::optional<std::size_t> K;
  SfdcResult sfdc;
  std::vector<InvarianceVerdict> invariance;  // one per final-round proposal
  std::string reason;
  explicit operator bool() const { return passed; }
};

// sfdc_check plus N_K-invariance of the final round's decompositions. The
// initial family is the whole window.
EquivariantVerdict equivariant_sfdc_check(const GroupWindow& window, const NormalChain& chain, const Challenge& ch,
                                          const Strategy& s, Dist B);

// Re-runs the verifiers on a stored transcript and recomputes the outcome.
GameTranscript reverify(const GameTranscript& t);

}  // namespace boxfdc
