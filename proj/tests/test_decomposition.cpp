#include <doctest.h>

#include <boxfdc/finite_groups.hpp>

#include "oracles.hpp"

using namespace boxfdc;
using oracle::interval;
using oracle::set_of;
using oracle::values;

namespace {

Decomposition make(const PointSubset& region, std::vector<PointSubset> c0, std::vector<PointSubset> c1) {
  Decomposition d(region);
  for (auto& p : c0) d.add(0, p);
  for (auto& p : c1) d.add(1, p);
  return d;
}

std::set<std::vector<std::int64_t>> piece_values(const GroupWindow& w, const SubsetFamily& f) {
  std::set<std::vector<std::int64_t>> out;
  for (const auto& p : f.pieces()) out.insert(values(w, p));
  return out;
}

}  // namespace

TEST_CASE("ordinary verification") {
  const auto w = oracle::z_window(0, 19);
  const auto d = make(w.all(), {interval(w, 0, 4), interval(w, 10, 14)}, {interval(w, 5, 9), interval(w, 15, 19)});
  CHECK(verify_ordinary(d, 5));
  const auto bad = verify_ordinary(d, 7);
  CHECK(!bad);
  REQUIRE(bad.witness);
  CHECK(bad.witness->distance == 6);
  CHECK(*bad.witness_color == 0);
  CHECK(verify_ordinary(make(w.all(), {w.all()}, {}), 1000));

  const auto gap = verify_ordinary(make(w.all(), {interval(w, 0, 4)}, {interval(w, 6, 19)}), 1);
  CHECK(!gap);
  CHECK(gap.uncovered.size() == 1);
  const auto outside = verify_ordinary(make(interval(w, 0, 9), {interval(w, 0, 10)}, {}), 1);
  CHECK(!outside);
  CHECK(outside.piece_outside_region);
}

TEST_CASE("full verification") {
  const auto w = oracle::z_window(0, 11);
  const auto ok = verify_full(make(w.all(), {interval(w, 0, 7)}, {interval(w, 4, 11)}), 3);
  CHECK(ok);
  CHECK(ok.lebesgue == 3);
  CHECK(verify_full(make(w.all(), {w.all()}, {}), 12));
  const auto touching = verify_full(make(w.all(), {interval(w, 0, 5)}, {interval(w, 6, 11)}), 2);
  CHECK(!touching);
  CHECK(touching.lebesgue == 1);
  const auto overlap = verify_full(make(w.all(), {interval(w, 0, 7), interval(w, 4, 11)}, {}), 1);
  CHECK(!overlap);
  CHECK(overlap.overlap);
}

TEST_CASE("random decompositions agree with direct scans") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 80; ++trial) {
    const std::int64_t n = 10 + static_cast<std::int64_t>(rng() % 30);
    const auto w = oracle::z_window(0, n - 1);
    Decomposition d(w.all());
    for (int c = 0; c < 2; ++c) {
      const int k = static_cast<int>(rng() % 4);
      for (int i = 0; i < k; ++i) {
        const std::int64_t a = static_cast<std::int64_t>(rng() % n);
        const std::int64_t b = std::min<std::int64_t>(n - 1, a + static_cast<std::int64_t>(rng() % 8));
        d.add(c, interval(w, a, b));
      }
    }
    const Dist r = 1 + rng() % 6;
    CHECK(static_cast<bool>(verify_ordinary(d, r)) == oracle::ordinary_ok(d, r));
    const auto pieces = oracle::all_pieces(d);
    if (oracle::covers(pieces, w.all())) {
      CHECK(verify_full(d, 1).lebesgue == oracle::lebesgue(pieces, w.all()));
    }
  }
}

TEST_CASE("invariance under a finite subgroup of Z/12Z") {
  const auto c12 = cyclic_group(12);
  const auto w = GroupWindow::whole(c12);
  const auto acting = Subgroup::generated_by(c12, {{4}});
  auto s = [&](std::initializer_list<std::int64_t> xs) {
    PointSubset p(w.space());
    for (auto x : xs) p.insert(w.point_of({x}));
    return p;
  };
  const auto d = make(w.all(), {s({0, 1}), s({4, 5}), s({8, 9})}, {s({2, 3}), s({6, 7}), s({10, 11})});
  CHECK(verify_invariance(d, {w, acting}));
  CHECK(verify_invariance(d, {w, Subgroup::trivial(c12)}));
  const auto partial = make(w.all(), {s({0, 1}), s({4, 5})}, {});
  const auto v = verify_invariance(partial, {w, acting});
  CHECK(!v);
  REQUIRE(v.translation);
  CHECK(*v.translation == Element{8});
  CHECK(v.piece->index == 0);
}

TEST_CASE("invariance on a truncated Z window") {
  const auto z = oracle::z();
  const auto w = oracle::z_window(-8, 7);
  const auto n4 = Subgroup::lattice(z, {{4}});
  Decomposition d(w.all());
  for (std::int64_t k = -8; k < 8; k += 4) {
    d.add(0, interval(w, k, k + 1));
    d.add(1, interval(w, k + 2, k + 3));
  }
  CHECK(verify_invariance(d, {w, n4}));
  // pieces cut by the window edge are compared inside the window only
  Decomposition cut(w.all());
  for (std::int64_t k = -9; k < 8; k += 3) cut.add(0, interval(w, std::max<std::int64_t>(k, -8), std::min<std::int64_t>(k + 2, 7)));
  CHECK(verify_invariance(cut, {w, Subgroup::lattice(z, {{3}})}));
  CHECK(!verify_invariance(cut, {w, n4}));
}

TEST_CASE("interval decomposition of a Z ball") {
  const auto z = oracle::z();
  const auto w = GroupWindow::ball(z, 21);  // l <= 20
  const auto d = interval_decomposition_z(w, w.all(), 3);
  CHECK(piece_values(w, d.color0()) ==
        std::set<std::vector<std::int64_t>>{oracle::range(-6, 6), oracle::range(-18, -12), oracle::range(12, 18)});
  CHECK(piece_values(w, d.color1()) ==
        std::set<std::vector<std::int64_t>>{oracle::range(-12, -6), oracle::range(6, 12), oracle::range(-20, -18),
                                            oracle::range(18, 20)});
  CHECK(verify_ordinary(d, 3));
  CHECK(d.max_diameter() <= 12);

  const auto big = interval_decomposition_z(w, w.all(), 50);
  CHECK(big.color0().size() == 1);
  CHECK(big.color0()[0] == w.all());
  CHECK(big.color1().empty());
}

TEST_CASE("interval decompositions are R-disjoint with small pieces") {
  const auto z = oracle::z();
  for (std::int64_t radius : {5, 17, 40})
    for (Dist R = 1; R <= 12; ++R) {
      const auto w = GroupWindow::ball(z, radius);
      const auto d = interval_decomposition_z(w, w.all(), R);
      CHECK(oracle::ordinary_ok(d, R));
      CHECK(d.max_diameter() <= 4 * R);
    }
  const auto c24 = cyclic_group(24);
  const auto w = GroupWindow::whole(c24);
  const auto d = interval_decomposition_z(w, w.all(), 2);
  CHECK(oracle::ordinary_ok(d, 2));
  const auto s3 = GroupWindow::whole(symmetric_group(3));
  CHECK_THROWS_AS(interval_decomposition_z(s3, s3.all(), 1), PreconditionError);
}

TEST_CASE("coset decompositions") {
  const auto z = oracle::z();
  const auto w = oracle::z_window(-50, 50);
  const auto ten = Subgroup::lattice(z, {{10}});
  const auto d = coset_decomposition(w, w.all(), ten, 1);
  CHECK(d.color0().size() == 10);
  CHECK(d.color1().empty());
  CHECK(verify_ordinary(d, 1));
  CHECK(coset_decomposition(w, w.all(), Subgroup::whole(z), 7).color0().size() == 1);
  CHECK_THROWS_AS(coset_decomposition(w, w.all(), ten, 5), PreconditionError);

  const auto z2 = GroupModel::integer_lattice(2, 64);
  const auto w2 = GroupWindow::box(z2, {-6, -6}, {6, 6});
  const auto rows = Subgroup::lattice(z2, {{1, 0}, {0, 5}});
  const auto rd = coset_decomposition(w2, w2.all(), rows, 1);
  CHECK(rd.color0().size() == 5);
  CHECK(verify_ordinary(rd, 1));
  CHECK(!verify_ordinary(rd, 2));
  CHECK_THROWS_AS(coset_decomposition(w2, w2.all(), rows, 2), PreconditionError);
}

TEST_CASE("r-components") {
  const auto w = oracle::z_window(0, 20);
  const auto s = set_of(w, {0, 1, 2, 5, 6, 12});
  CHECK(r_components(s, 2).size() == 3);
  CHECK(r_components(s, 3).size() == 3);
  CHECK(r_components(s, 4).size() == 2);
  CHECK(r_components(s, 7).size() == 1);
  CHECK(r_components(PointSubset(w.space()), 3).empty());
}
