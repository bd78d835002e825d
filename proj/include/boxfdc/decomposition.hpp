#pragma once

#include <boxfdc/group.hpp>
#include <boxfdc/metric.hpp>

#include <optional>
#include <string>
#include <vector>

namespace boxfdc {

// X = X_0 u X_1 with each X_i a list of pieces. Colors may overlap.
class Decomposition {
 public:
  explicit Decomposition(PointSubset region);
  Decomposition(PointSubset region, SubsetFamily color0, SubsetFamily color1);

  const PointSubset& region() const { return region_; }
  const SpacePtr& carrier() const { return region_.carrier(); }
  const SubsetFamily& color(int c) const { return c == 0 ? color0_ : color1_; }
  const SubsetFamily& color0() const { return color0_; }
  const SubsetFamily& color1() const { return color1_; }

  void add(int c, PointSubset piece);
  // Both colors pooled, color 0 first.
  SubsetFamily pooled() const;
  std::size_t piece_count() const { return color0_.size() + color1_.size(); }
  Dist max_diameter() const;

 private:
  PointSubset region_;
  SubsetFamily color0_, color1_;
};

// Same pieces per color, as sets (order and duplicates ignored).
bool same_pieces(const Decomposition& a, const Decomposition& b);

struct PieceRef {
  int color = 0;
  std::size_t index = 0;
};

struct OrdinaryVerdict {
  bool passed = true;
  std::vector<PointId> uncovered;
  std::optional<PieceRef> piece_outside_region;
  std::optional<int> witness_color;
  std::optional<DisjointnessWitness> witness;
  explicit operator bool() const { return passed; }
  std::string describe() const;
};

// Cover of the region, pieces inside the region, each color r-disjoint.
OrdinaryVerdict verify_ordinary(const Decomposition& d, Dist r);

struct FullVerdict {
  bool passed = true;
  Dist lebesgue = 0;  // exact value when the pieces cover the region
  bool unbounded = false;  // one piece holds the whole region, so every R works
  std::vector<PointId> uncovered;
  std::optional<PieceRef> piece_outside_region;
  std::optional<std::pair<PieceRef, PieceRef>> overlap;  // two meeting pieces of one color
  explicit operator bool() const { return passed; }
  std::string describe() const;
};

// Pooled Lebesgue number >= R relative to the region, plus disjoint pieces
// within each color.
FullVerdict verify_full(const Decomposition& d, Dist R);

// Right translation by the acting subgroup on a window of the group.
struct InvarianceSpec {
  GroupWindow window;
  Subgroup acting;
};

struct InvarianceVerdict {
  bool passed = true;
  std::size_t translations_checked = 0;
  std::optional<PieceRef> piece;
  std::optional<Element> translation;
  explicit operator bool() const { return passed; }
  std::string describe() const;
};

// Elements h of the acting subgroup with W*h meeting W, lexicographic.
std::vector<Element> window_translations(const InvarianceSpec& spec);

// For each piece U and each h with U*h meeting the window W, some piece V of
// the same color has V n (W*h) = (U*h) n W. For W closed under the action
// this is exactly U*h being a piece.
InvarianceVerdict verify_invariance(const Decomposition& d, const InvarianceSpec& spec);

// ---------------------------------------------------------------------------

// Stage k holds one decomposition for each piece of stage k-1 (stage 0 is the
// start region); the pieces of a stage are its parts' pieces in order,
// color 0 before color 1 within each part. `bound` is the gap of an ordinary
// stage or the Lebesgue bound of a full one.
struct DecompositionStage {
  Dist bound = 0;
  std::vector<Decomposition> parts;
};

struct DecompositionSequence {
  PointSubset start;
  std::vector<DecompositionStage> stages;

  explicit DecompositionSequence(PointSubset s) : start(std::move(s)) {}
  std::vector<PointSubset> pieces_after(std::size_t stage) const;  // stage 0 -> {start}
  std::vector<Dist> bounds() const;
};

struct StageVerdict {
  std::size_t stage = 0;  // 1-based
  bool passed = true;
  Dist bound = 0;
  Dist achieved = 0;  // least Lebesgue number over the parts (full checks); parts held by one piece count as the bound
  std::string detail;
};

struct SequenceVerdict {
  bool passed = true;
  std::vector<StageVerdict> stages;
  explicit operator bool() const { return passed; }
  std::string describe() const;
};

// Part regions must match the previous stage's pieces.
void check_sequence_shape(const DecompositionSequence& seq);
SequenceVerdict verify_ordinary_sequence(const DecompositionSequence& seq);
SequenceVerdict verify_full_sequence(const DecompositionSequence& seq);
// Same checks at caller-supplied bounds per stage.
SequenceVerdict verify_ordinary_sequence(const DecompositionSequence& seq, const std::vector<Dist>& gaps);
SequenceVerdict verify_full_sequence(const DecompositionSequence& seq, const std::vector<Dist>& bounds);

// Outer neighborhoods of radius max(1, floor(R_k/2)) taken inside the enlarged
// parent piece. Output stage bounds are floor(R_k/4).
DecompositionSequence ordinary_to_full(const DecompositionSequence& seq);

// Iterated inner neighborhoods; output gaps R_1, R_2 - R_1, ..., R_n - R_{n-1}.
DecompositionSequence full_to_ordinary(const DecompositionSequence& seq);

// ---------------------------------------------------------------------------

struct PullbackResult {
  Decomposition decomposition;
  InvarianceVerdict invariance;
  std::int64_t scale = 0;  // the constant c used
  std::vector<std::vector<Element>> lifts;  // per input piece, color 0 first
};

// Each quotient piece Y lifts to an isometric U_Y; its preimage is the union of
// the translates U_Y*h, h in N. `scale` <= 0 picks c = max piece diameter + 1.
PullbackResult pullback_equivariant(const Decomposition& d, const QuotientModel& q, const GroupWindow& window,
                                    std::int64_t scale = 0);

struct PushforwardResult {
  Decomposition decomposition;
  std::int64_t scale = 0;
  Dist lebesgue_before = 0;
  Dist lebesgue_after = 0;
};

PushforwardResult pushforward_equivariant(const Decomposition& d, const GroupWindow& window, const QuotientModel& q,
                                          std::int64_t scale = 0);

// Annuli A_j = {(4j-4)R <= l <= (4j-2)R} (color 0) and B_j = {(4j-2)R <= l <= 4jR}
// (color 1) intersected with the region, each split into its R-connected
// components. For Z and its cyclic quotients.
Decomposition interval_decomposition_z(const GroupWindow& window, const PointSubset& region, Dist R);

// Cosets g*S of the subgroup inside the region, as one color. Requires the
// open ball B(1,R) to lie in S.
Decomposition coset_decomposition(const GroupWindow& window, const PointSubset& region, const Subgroup& sub, Dist R);

// Pieces as components of the graph on `s` joining points at distance < r.
std::vector<PointSubset> r_components(const PointSubset& s, Dist r);

}  // namespace boxfdc
