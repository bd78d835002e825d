#include <doctest.h>

#include <boxfdc/finite_groups.hpp>

#include "oracles.hpp"

using namespace boxfdc;

namespace {

std::int64_t det2(const Element& a, const Element& b) { return a[0] * b[1] - a[1] * b[0]; }

// v in the lattice spanned by the rows a, b (nonsingular) iff adj(B)^T v = 0 mod det.
bool in_span2(const Element& a, const Element& b, const Element& v) {
  const auto d = det2(a, b);
  const auto c0 = v[0] * b[1] - v[1] * b[0];
  const auto c1 = a[0] * v[1] - a[1] * v[0];
  return c0 % d == 0 && c1 % d == 0;
}

}  // namespace

TEST_CASE("Hermite normal form lattices against determinant oracles") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    Element a{static_cast<std::int64_t>(rng() % 13) - 6, static_cast<std::int64_t>(rng() % 13) - 6};
    Element b{static_cast<std::int64_t>(rng() % 13) - 6, static_cast<std::int64_t>(rng() % 13) - 6};
    if (det2(a, b) == 0) continue;
    const IntegerLattice L(2, {a, b});
    CHECK(L.full_rank());
    CHECK(L.index() == static_cast<std::uint64_t>(std::llabs(det2(a, b))));
    CHECK(L.residues().size() == L.index());
    for (int k = 0; k < 20; ++k) {
      Element v{static_cast<std::int64_t>(rng() % 41) - 20, static_cast<std::int64_t>(rng() % 41) - 20};
      CHECK(L.contains(v) == in_span2(a, b, v));
      const auto r = L.reduce(v);
      Element diff{v[0] - r[0], v[1] - r[1]};
      CHECK(in_span2(a, b, diff));
    }
  }
  const IntegerLattice line(2, {{2, 4}});
  CHECK(line.rank() == 1);
  CHECK_THROWS(line.index());
}

TEST_CASE("word lengths in Z^n") {
  const auto z2 = GroupModel::integer_lattice(2, 32);
  CHECK(z2.word_length({2, -3}) == 5);
  CHECK(z2.word_length({0, 0}) == 0);
  std::mt19937 rng(3);
  for (int i = 0; i < 100; ++i) {
    Element e{static_cast<std::int64_t>(rng() % 21) - 10, static_cast<std::int64_t>(rng() % 21) - 10};
    CHECK(z2.word_length(e) == oracle::l1(e));
    CHECK(z2.word_length_by_search(e) == oracle::l1(e));
  }
  const auto z23 = GroupModel::integer_lattice(1, {{2}, {3}}, 40);
  CHECK(z23.word_length({1}) == 2);
  CHECK(z23.word_length({5}) == 2);
  CHECK(z23.word_length({6}) == 2);
  CHECK(z23.word_length({7}) == 3);
  CHECK_THROWS_AS(z23.word_length({500}), OutOfWindow);
  CHECK_THROWS(GroupModel::integer_lattice(1, {{2}}, 10));
}

TEST_CASE("S3 with two transpositions") {
  const auto s3 = GroupModel::permutation_group(3, {{1, 0, 2}, {0, 2, 1}}, "S3");
  CHECK(s3.order() == 6);
  // (13) = (12)(23)(12) needs three transpositions
  CHECK(s3.word_length({2, 1, 0}) == 3);
  CHECK(s3.word_length({1, 0, 2}) == 1);
  CHECK(s3.word_length({1, 2, 0}) == 2);
  CHECK(s3.word_length(s3.identity()) == 0);
  const auto lens = oracle::bfs_lengths(s3);
  for (std::size_t i = 0; i < s3.order(); ++i) CHECK(s3.word_length(s3.elements()[i]) == lens[i]);
}

TEST_CASE("group balls") {
  const auto z = GroupModel::integer_lattice(1, 64);
  CHECK(group_ball(z, 4).size() == 7);
  CHECK(group_ball(z, 1) == std::vector<Element>{{0}});
  const auto z2 = GroupModel::integer_lattice(2, 64);
  CHECK(group_ball(z2, 3).size() == 13);
  const auto sp = induced_space(z2, 3);
  CHECK(sp->size() == 13);
  const auto s = induced_space(z, 3);
  CHECK(s->size() == 5);
  CHECK(s->dist(0, 4) == 4);
  const auto c5 = cyclic_group(5);
  CHECK(group_ball(c5, 100).size() == 5);
}

TEST_CASE("quotient lengths by breadth-first search match coset minima") {
  const auto z = GroupModel::integer_lattice(1, 256);
  const QuotientModel q6(z, Subgroup::lattice(z, {{6}}));
  CHECK(quotient_length(q6, {4}) == 2);
  CHECK(quotient_length(q6, {12}) == 0);

  for (std::int64_t m = 1; m <= 48; ++m) {
    const QuotientModel q(z, Subgroup::lattice(z, {{m}}));
    CHECK(q.index() == static_cast<std::size_t>(m));
    for (std::int64_t x = -2 * m; x <= 2 * m; ++x) CHECK(q.length({x}) == oracle::cyclic_length(x, m));
  }

  const auto z2 = GroupModel::integer_lattice(2, 64);
  const std::vector<Element> basis{{2, 2}, {4, -4}};
  const QuotientModel q(z2, Subgroup::lattice(z2, basis));
  CHECK(q.index() == 16);
  CHECK(q.length({3, 1}) == oracle::coset_min_l1({3, 1}, basis, 4));
  for (std::int64_t a = -6; a <= 6; ++a)
    for (std::int64_t b = -6; b <= 6; ++b) {
      CHECK(q.length({a, b}) == oracle::coset_min_l1({a, b}, basis, 4));
      CHECK(q.length_by_coset_minimum({a, b}) == q.length({a, b}));
    }
}

TEST_CASE("representatives are shortest coset members") {
  const auto z2 = GroupModel::integer_lattice(2, 64);
  const QuotientModel q(z2, Subgroup::lattice(z2, {{3, 0}, {0, 5}}));
  for (const auto& c : q.cosets()) {
    const auto r = q.representative(c);
    CHECK(q.coset_index(r) == q.coset_index(c));
    CHECK(z2.word_length(r) == q.length(c));
  }
  CHECK(q.diameter() == 1 + 2);
}

TEST_CASE("ball pushforward") {
  const auto z = GroupModel::integer_lattice(1, 128);
  const QuotientModel q5(z, Subgroup::lattice(z, {{5}}));
  CHECK(check_ball_pushforward(q5, 4));
  CHECK(check_ball_pushforward(q5, 1));
  const QuotientModel q6(z, Subgroup::lattice(z, {{6}}));
  CHECK(check_ball_pushforward(q6, 3));
  const auto ball = q6.ball(3);
  std::set<std::size_t> want;
  for (std::int64_t x : {0, 1, 2, 4, 5}) want.insert(q6.coset_index({x}));
  CHECK(std::set<std::size_t>(ball.begin(), ball.end()) == want);
}

TEST_CASE("permutation group quotients") {
  const auto s4 = symmetric_group(4);
  const auto v4 = Subgroup::generated_by(s4, {{1, 0, 3, 2}, {2, 3, 0, 1}});
  const auto a4 = Subgroup::generated_by(s4, {{1, 2, 0, 3}, {0, 2, 3, 1}});
  const auto lens = oracle::bfs_lengths(s4);
  for (const auto& n : {v4, a4}) {
    const QuotientModel q(s4, n);
    CHECK(q.index() * n.elements().size() == 24);
    for (std::size_t i = 0; i < s4.order(); ++i) {
      const auto& x = s4.elements()[i];
      std::int64_t best = 1 << 20;
      for (std::size_t j = 0; j < s4.order(); ++j)
        if (n.contains(s4.multiply(s4.invert(x), s4.elements()[j]))) best = std::min(best, lens[j]);
      CHECK(q.length(x) == best);
    }
  }
  CHECK_THROWS_AS(QuotientModel(s4, Subgroup::generated_by(s4, {{1, 0, 2, 3}})), PreconditionError);
}

TEST_CASE("subgroup membership, cosets and normality") {
  const auto z2 = GroupModel::integer_lattice(2, 32);
  const auto n = Subgroup::lattice(z2, {{2, 0}, {0, 3}});
  CHECK(n.contains({4, -6}));
  CHECK(!n.contains({1, 0}));
  CHECK(n.index() == 6);
  CHECK(n.coset_key({5, 7}) == n.coset_key({1, 1}));
  CHECK(!n.normality_violation(3));

  const auto s3 = symmetric_group(3);
  const auto t = Subgroup::generated_by(s3, {{1, 0, 2}});
  CHECK(t.normality_violation(4));
  CHECK(!Subgroup::whole(s3).normality_violation(4));
  CHECK(Subgroup::trivial(s3).elements().size() == 1);
  CHECK_THROWS(Subgroup::from_elements(s3, {{0, 1, 2}, {1, 2, 0}}));
}

TEST_CASE("bornologous check") {
  const auto z = GroupModel::integer_lattice(1, 256);
  const Homomorphism id = [](const Element& e) { return e; };
  const Homomorphism twice = [](const Element& e) { return Element{2 * e[0]}; };
  CHECK(bornologous_check(z, z, id, [](std::int64_t r) { return r; }, 20));
  CHECK(bornologous_check(z, z, twice, [](std::int64_t r) { return 2 * r; }, 20));
  const auto v = bornologous_check(z, z, twice, [](std::int64_t r) { return r; }, 20);
  CHECK(!v);
  CHECK(v.radius == 2);
  REQUIRE(v.witness);
  // the ball is scanned in lexicographic order, so -1 is met before 1
  CHECK(std::llabs((*v.witness)[0]) == 1);
}

TEST_CASE("windows") {
  const auto z2 = GroupModel::integer_lattice(2, 32);
  const auto w = GroupWindow::box(z2, {-2, -1}, {2, 1});
  CHECK(w.size() == 15);
  CHECK(w.space()->dist(w.point_of({-2, -1}), w.point_of({2, 1})) == 6);
  CHECK(!w.find({3, 0}));
  CHECK_THROWS_AS(w.point_of({3, 0}), OutOfWindow);
  CHECK(!w.space()->find_violation());
}
