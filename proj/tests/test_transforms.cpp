#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"

using namespace boxfdc;
using oracle::interval;
using oracle::values;

namespace {

DecompositionSequence one_stage(const GroupWindow& w, Dist bound, std::vector<PointSubset> c0,
                                std::vector<PointSubset> c1) {
  DecompositionSequence seq(w.all());
  Decomposition d(w.all());
  for (auto& p : c0) d.add(0, p);
  for (auto& p : c1) d.add(1, p);
  seq.stages.push_back({bound, {d}});
  return seq;
}

// Checks every stage of a full sequence against the brute-force Lebesgue oracle.
bool full_by_scan(const DecompositionSequence& seq, const std::vector<Dist>& bounds) {
  for (std::size_t k = 0; k < seq.stages.size(); ++k)
    for (const auto& part : seq.stages[k].parts) {
      const auto pieces = oracle::all_pieces(part);
      if (!oracle::covers(pieces, part.region())) return false;
      const bool swallowed = std::any_of(pieces.begin(), pieces.end(),
                                         [&](const PointSubset& p) { return (part.region() - p).empty(); });
      if (!swallowed && oracle::lebesgue(pieces, part.region()) < bounds[k]) return false;
    }
  return true;
}

}  // namespace

TEST_CASE("ordinary to full on two intervals") {
  const auto w = oracle::z_window(0, 11);
  const auto out = ordinary_to_full(one_stage(w, 4, {interval(w, 0, 5)}, {interval(w, 6, 11)}));
  REQUIRE(out.stages.size() == 1);
  CHECK(out.stages[0].bound == 1);
  const auto& d = out.stages[0].parts[0];
  // open neighborhoods of radius 4/2 = 2
  CHECK(values(w, d.color0()[0]) == oracle::range(0, 6));
  CHECK(values(w, d.color1()[0]) == oracle::range(5, 11));
  const auto v = verify_full(d, 1);
  CHECK(v);
  CHECK(v.lebesgue == 2);
}

TEST_CASE("transforms leave a single-piece decomposition alone") {
  const auto w = oracle::z_window(0, 11);
  const auto full = ordinary_to_full(one_stage(w, 4, {w.all()}, {}));
  CHECK(full.stages[0].parts[0].color0()[0] == w.all());
  const auto ord = full_to_ordinary(one_stage(w, 5, {w.all()}, {}));
  CHECK(ord.stages[0].parts[0].color0()[0] == w.all());
}

TEST_CASE("full to ordinary on two overlapping intervals") {
  const auto w = oracle::z_window(0, 11);
  const auto out = full_to_ordinary(one_stage(w, 3, {interval(w, 0, 7)}, {interval(w, 4, 11)}));
  const auto& d = out.stages[0].parts[0];
  CHECK(values(w, d.color0()[0]) == oracle::range(0, 5));
  CHECK(values(w, d.color1()[0]) == oracle::range(6, 11));
  CHECK(verify_ordinary(d, 3));
}

TEST_CASE("two-stage sequences on [0,40]") {
  const auto w = oracle::z_window(0, 40);
  std::mt19937 rng(5);
  const auto ord = gen::random_ordinary_sequence(w, {4, 8}, rng);
  REQUIRE(verify_ordinary_sequence(ord));
  const auto full = ordinary_to_full(ord);
  CHECK(full.bounds() == std::vector<Dist>{1, 2});
  CHECK(verify_full_sequence(full));
  CHECK(full_by_scan(full, {1, 2}));

  const auto fin = gen::random_full_sequence(w, {3, 7}, rng);
  REQUIRE(verify_full_sequence(fin));
  const auto back = full_to_ordinary(fin);
  CHECK(back.bounds() == std::vector<Dist>{3, 4});
  CHECK(verify_ordinary_sequence(back));
}

TEST_CASE("transforms reject unverifiable input and name the stage") {
  const auto w = oracle::z_window(0, 11);
  auto bad = one_stage(w, 4, {interval(w, 0, 5)}, {interval(w, 7, 11)});
  try {
    ordinary_to_full(bad);
    FAIL("uncovered input accepted");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("stage 1") != std::string::npos);
  }
  auto decreasing = one_stage(w, 4, {w.all()}, {});
  decreasing.stages.push_back({2, {Decomposition(w.all(), SubsetFamily(w.space(), {w.all()}), SubsetFamily(w.space()))}});
  CHECK_THROWS_AS(ordinary_to_full(decreasing), PreconditionError);
  CHECK_THROWS_AS(full_to_ordinary(one_stage(w, 3, {interval(w, 0, 5)}, {interval(w, 6, 11)})), PreconditionError);
}

TEST_CASE("random generators produce valid inputs") {
  std::mt19937 rng(11);
  for (int t = 0; t < 25; ++t) {
    const auto w = gen::random_carrier(rng, 200);
    const auto gaps = gen::random_gaps(rng, 3, 16);
    const auto ord = gen::random_ordinary_sequence(w, gaps, rng);
    CHECK(verify_ordinary_sequence(ord));
    for (std::size_t k = 0; k < ord.stages.size(); ++k)
      for (const auto& part : ord.stages[k].parts) CHECK(oracle::ordinary_ok(part, gaps[k]));
    const auto full = gen::random_full_sequence(w, gaps, rng);
    CHECK(verify_full_sequence(full));
    CHECK(full_by_scan(full, gaps));
  }
}

TEST_CASE("full to ordinary meets its gaps on random input") {
  std::mt19937 rng(17);
  for (int t = 0; t < 40; ++t) {
    const auto w = gen::random_carrier(rng, 200);
    const auto bounds = gen::random_gaps(rng, 3, 16);
    const auto out = full_to_ordinary(gen::random_full_sequence(w, bounds, rng));
    std::vector<Dist> gaps;
    for (std::size_t k = 0; k < bounds.size(); ++k) gaps.push_back(k ? bounds[k] - bounds[k - 1] : bounds[0]);
    CHECK(out.bounds() == gaps);
    CHECK(verify_ordinary_sequence(out));
    for (std::size_t k = 0; k < out.stages.size(); ++k)
      for (const auto& part : out.stages[k].parts) CHECK(oracle::ordinary_ok(part, gaps[k]));
  }
}

TEST_CASE("ordinary to full when each gap at least doubles the previous one") {
  std::mt19937 rng(23);
  for (int t = 0; t < 40; ++t) {
    const auto w = gen::random_carrier(rng, 200);
    std::vector<Dist> gaps{static_cast<Dist>(gen::uniform(rng, 1, 4))};
    while (gaps.size() < 3 && rng() % 3) gaps.push_back(2 * gaps.back() + static_cast<Dist>(gen::uniform(rng, 0, 3)));
    const auto out = ordinary_to_full(gen::random_ordinary_sequence(w, gaps, rng));
    std::vector<Dist> quarters;
    for (auto g : gaps) quarters.push_back(g / 4);
    CHECK(out.bounds() == quarters);
    CHECK(verify_full_sequence(out));
  }
}

TEST_CASE("ordinary to full can miss floor(R/4) when consecutive gaps are close") {
  // Z^2, stage 1 splits off the upper half plane, stage 2 splits it at x = 0.
  const auto z2 = GroupModel::integer_lattice(2, 64);
  const auto w = GroupWindow::box(z2, {-12, -12}, {12, 12});
  PointSubset upper(w.space()), lower(w.space()), left(w.space()), right(w.space());
  for (PointId p = 0; p < w.size(); ++p) {
    const auto& e = w.element_of(p);
    if (e[1] >= 0) {
      upper.insert(p);
      (e[0] <= 0 ? left : right).insert(p);
    } else {
      lower.insert(p);
    }
  }
  DecompositionSequence seq(w.all());
  Decomposition first(w.all());
  first.add(0, upper);
  first.add(1, lower);
  seq.stages.push_back({8, {first}});
  Decomposition split_upper(upper), keep_lower(lower);
  split_upper.add(0, left);
  split_upper.add(1, right);
  keep_lower.add(0, lower);
  seq.stages.push_back({9, {split_upper, keep_lower}});
  REQUIRE(verify_ordinary_sequence(seq));
  const auto out = ordinary_to_full(seq);
  const auto v = verify_full_sequence(out);
  CHECK(v.stages[0].passed);
  // the enlarged upper piece reaches y = -3; there the two halves meet
  CHECK(!v.stages[1].passed);
  CHECK(v.stages[1].achieved < 2);
}
