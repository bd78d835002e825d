// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
// Exit status is nonzero when any criterion fails.

#include <boxfdc/asdim.hpp>
#include <boxfdc/box_space.hpp>
#include <boxfdc/cli/commands.hpp>
#include <boxfdc/coarse_maps.hpp>
#include <boxfdc/finite_groups.hpp>
#include <boxfdc/game.hpp>

#include "generators.hpp"
#include "oracles.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

using namespace boxfdc;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

// Collects failures without stopping at the first one.
struct Tally {
  std::size_t checked = 0, failed = 0;
  std::string first_failure;
  void check(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (!ok && failed++ == 0) first_failure = what();
  }
  Outcome outcome(const std::string& summary) const {
    std::ostringstream os;
    os << summary << "; " << checked - failed << "/" << checked << " checks";
    if (failed) os << "; first failure: " << first_failure;
    return {failed == 0, os.str()};
  }
};

// --- model zoo shared by criteria 2 and 3 ----------------------------------

struct Lattice2 {
  std::int64_t a, b, c;  // rows (a, b) and (0, c), 0 <= b < c
};

std::vector<Lattice2> lattices_up_to(std::int64_t max_index) {
  std::vector<Lattice2> out;
  for (std::int64_t a = 1; a <= max_index; ++a)
    for (std::int64_t c = 1; a * c <= max_index; ++c)
      for (std::int64_t b = 0; b < c; ++b) out.push_back({a, b, c});
  return out;
}

std::int64_t floor_div(std::int64_t x, std::int64_t m) { return x >= 0 ? x / m : -((-x + m - 1) / m); }

// Reduced coordinates of (x, y) modulo the lattice, computed directly.
std::pair<std::int64_t, std::int64_t> lattice_key(const Lattice2& l, std::int64_t x, std::int64_t y) {
  const auto k = floor_div(x, l.a);
  const auto rx = x - k * l.a;
  const auto ry = y - k * l.b;
  return {rx, ry - floor_div(ry, l.c) * l.c};
}

const GroupModel& z1() {
  static const GroupModel g = GroupModel::integer_lattice(1, 512);
  return g;
}
const GroupModel& z2() {
  static const GroupModel g = GroupModel::integer_lattice(2, 256);
  return g;
}

std::optional<Subgroup> normal_subgroup_of_order(const GroupModel& g, std::size_t order) {
  const auto whole = Subgroup::whole(g);
  for (const auto& s : all_subgroups(g))
    if (s.elements().size() == order && is_normal_in(s, whole)) return s;
  return std::nullopt;
}

struct PermQuotient {
  std::string name;
  GroupModel group;
  Subgroup normal;
};

std::vector<PermQuotient> permutation_quotients() {
  std::vector<PermQuotient> out;
  const auto s4 = GroupModel::permutation_group(4, {{1, 0, 2, 3}, {1, 2, 3, 0}}, "S4");
  out.push_back({"S4/V4", s4, *normal_subgroup_of_order(s4, 4)});
  out.push_back({"S4/A4", s4, *normal_subgroup_of_order(s4, 12)});
  const auto d4 = GroupModel::permutation_group(4, {{1, 2, 3, 0}, {0, 3, 2, 1}}, "D4");
  out.push_back({"D4/Z(D4)", d4, *normal_subgroup_of_order(d4, 2)});
  const auto s3 = GroupModel::permutation_group(3, {{1, 0, 2}, {0, 2, 1}}, "S3");
  out.push_back({"S3/A3", s3, *normal_subgroup_of_order(s3, 3)});
  return out;
}

std::string one_line(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  for (std::size_t i; (i = s.find('\n')) != std::string::npos;) s.replace(i, 1, "; ");
  return s;
}

// --- criteria ---------------------------------------------------------------

Outcome metric_axioms() {
  Tally t;
  std::size_t spaces = 0;
  auto check = [&](const SpacePtr& s, const std::string& what) {
    ++spaces;
    const auto bad = s->find_violation();
    t.check(!bad, [&] { return what + ": " + bad->describe(); });
  };
  check(GroupWindow::box(z1(), {-999}, {1000}).space(), "Z window of 2000 points");
  check(GroupWindow::box(z2(), {-22, -22}, {21, 22}).space(), "Z^2 window 44x45");
  const auto z3 = GroupModel::integer_lattice(3, 32);
  check(GroupWindow::box(z3, {-6, -6, -6}, {5, 5, 5}).space(), "Z^3 window 12^3");
  const auto z2_23 = GroupModel::integer_lattice(2, {{2, 0}, {3, 0}, {0, 1}}, 64);
  check(GroupWindow::box(z2_23, {-15, -15}, {15, 15}).space(), "Z^2 with generators (2,0),(3,0),(0,1)");

  std::vector<GroupModel> finite = small_groups(24);
  finite.push_back(cyclic_group(48));
  finite.push_back(dihedral_group(24));
  finite.push_back(dicyclic_group(12));
  finite.push_back(direct_product(symmetric_group(4), cyclic_group(2)));
  finite.push_back(direct_product(cyclic_group(6), cyclic_group(6)));
  for (const auto& g : finite) {
    check(GroupWindow::whole(g).space(), g.name());
    if (g.order() <= 16)
      for (const auto& sq : associated_family(g)) check(sq.space(), g.name() + " " + sq.describe());
  }

  for (std::size_t k = 1; k <= 6; ++k) {
    check(build_box(NormalChain::powers(z1(), 2, 6), k).space, "box of 2^i Z, k=" + std::to_string(k));
    check(build_box(NormalChain::powers(z1(), 3, 6), k).space, "box of 3^i Z, k=" + std::to_string(k));
  }
  for (std::size_t k = 1; k <= 4; ++k)
    check(build_box(NormalChain::powers(z2(), 2, 4), k).space, "box of 2^i Z^2, k=" + std::to_string(k));
  return t.outcome(std::to_string(spaces) + " spaces");
}

Outcome quotient_lengths() {
  Tally t;
  std::size_t elements = 0;
  for (std::int64_t m = 1; m <= 48; ++m) {
    const QuotientModel q(z1(), Subgroup::lattice(z1(), {{m}}));
    for (const auto& key : q.cosets()) {
      ++elements;
      const auto expect = oracle::cyclic_length(key[0], m);
      t.check(q.length(key) == expect && q.length_by_coset_minimum(key) == expect,
              [&] { return "Z/" + std::to_string(m) + " element " + std::to_string(key[0]); });
    }
  }
  const auto lattices = lattices_up_to(36);
  for (const auto& l : lattices) {
    const QuotientModel q(z2(), Subgroup::lattice(z2(), {{l.a, l.b}, {0, l.c}}));
    // every coset has a member with |x| < a and |y| < c, so this box reaches all of them
    const auto reach = l.a + l.c;
    std::map<std::pair<std::int64_t, std::int64_t>, long long> best;
    for (auto x = -reach; x <= reach; ++x)
      for (auto y = -reach; y <= reach; ++y) {
        auto [it, fresh] = best.try_emplace(lattice_key(l, x, y), std::llabs(x) + std::llabs(y));
        if (!fresh) it->second = std::min(it->second, std::llabs(x) + std::llabs(y));
      }
    t.check(best.size() == q.index(), [&] { return "index mismatch"; });
    for (const auto& key : q.cosets()) {
      ++elements;
      const std::int64_t expect = best.at(lattice_key(l, key[0], key[1]));
      t.check(q.length(key) == expect && q.length_by_coset_minimum(key) == expect, [&] {
        std::ostringstream os;
        os << "Z^2/<(" << l.a << "," << l.b << "),(0," << l.c << ")> coset of (" << key[0] << "," << key[1] << ")";
        return os.str();
      });
    }
  }
  for (const auto& pq : permutation_quotients()) {
    const QuotientModel q(pq.group, pq.normal);
    const auto lens = oracle::bfs_lengths(pq.group);
    for (const auto& x : pq.group.elements()) {
      ++elements;
      std::int64_t expect = std::numeric_limits<std::int64_t>::max();
      for (const auto& n : pq.normal.elements())
        expect = std::min(expect, lens[pq.group.index_of(pq.group.multiply(x, n))]);
      t.check(q.length(x) == expect, [&] { return pq.name + " element " + pq.group.format(x); });
    }
  }
  return t.outcome(std::to_string(elements) + " elements over 48 cyclic, " + std::to_string(lattices.size()) +
                   " lattice and 4 permutation quotients");
}

Outcome ball_pushforward() {
  Tally t;
  std::size_t models = 0;
  auto run = [&](const QuotientModel& q, const std::string& name) {
    ++models;
    const auto top = 2 * static_cast<std::int64_t>(q.index());
    for (std::int64_t R = 1; R <= top; ++R) {
      const auto v = check_ball_pushforward(q, R);
      t.check(v.equal, [&] { return name + " at R=" + std::to_string(R); });
      if (!v.equal) break;
    }
  };
  for (std::int64_t m = 1; m <= 48; ++m) run(QuotientModel(z1(), Subgroup::lattice(z1(), {{m}})), "Z/" + std::to_string(m));
  for (const auto& l : lattices_up_to(36)) {
    std::ostringstream os;
    os << "Z^2/<(" << l.a << "," << l.b << "),(0," << l.c << ")>";
    run(QuotientModel(z2(), Subgroup::lattice(z2(), {{l.a, l.b}, {0, l.c}})), os.str());
  }
  for (const auto& pq : permutation_quotients()) run(QuotientModel(pq.group, pq.normal), pq.name);
  return t.outcome(std::to_string(models) + " quotients, R up to twice the index");
}

Outcome injectivity() {
  const auto chain = NormalChain::powers(z1(), 2, 7);
  std::vector<std::int64_t> radii;
  for (std::size_t i = 1; i <= 7; ++i) radii.push_back(injectivity_radius(chain, i, 64));
  Tally t;
  for (std::size_t i = 1; i < radii.size(); ++i)
    t.check(radii[i] >= radii[i - 1], [&] { return "radius drops at i=" + std::to_string(i + 1); });
  for (std::int64_t R = 1; R <= 32; ++R)
    t.check(std::any_of(radii.begin(), radii.end(), [&](std::int64_t r) { return r > R; }),
            [&] { return "no index exceeds R=" + std::to_string(R); });
  std::ostringstream os;
  os << "radii";
  for (auto r : radii) os << " " << r;
  return t.outcome(os.str());
}

Outcome transforms() {
  std::mt19937 rng(20240501);
  Tally to_full, to_ordinary;
  std::size_t points = 0;
  // failures at a stage whose gap at least doubles the previous one
  std::size_t failures_with_doubling = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = gen::random_carrier(rng, 500);
    points = std::max(points, w.size());
    const auto gaps = gen::random_gaps(rng, 3, 32);
    const auto ordinary = gen::random_ordinary_sequence(w, gaps, rng);
    std::vector<Dist> quarters;
    for (auto g : gaps) quarters.push_back(g / 4);
    const auto full = ordinary_to_full(ordinary);
    const auto vf = verify_full_sequence(full, quarters);
    to_full.check(vf.passed, [&] {
      std::ostringstream os;
      os << "trial " << trial << " (" << w.size() << " points, rank " << w.group().rank() << ", gaps";
      for (auto g : gaps) os << " " << g;
      os << "): " << one_line(vf.describe());
      return os.str();
    });
    if (!vf.passed)
      for (const auto& st : vf.stages)
        if (!st.passed) {
          const auto k = st.stage - 1;
          if (k == 0 || gaps[k] >= 2 * gaps[k - 1]) ++failures_with_doubling;
          break;
        }

    const auto bounds = gen::random_gaps(rng, 3, 32);
    const auto full_in = gen::random_full_sequence(w, bounds, rng);
    std::vector<Dist> diffs;
    for (std::size_t k = 0; k < bounds.size(); ++k) diffs.push_back(k ? bounds[k] - bounds[k - 1] : bounds[0]);
    const auto vo = verify_ordinary_sequence(full_to_ordinary(full_in), diffs);
    to_ordinary.check(vo.passed, [&] { return "trial " + std::to_string(trial) + ": " + one_line(vo.describe()); });
  }
  auto a = to_full.outcome("ordinary to full at floor(R/4)");
  if (to_full.failed)
    a.detail += "; failures at stages with R_k >= 2 R_(k-1): " + std::to_string(failures_with_doubling);
  auto b = to_ordinary.outcome("full to ordinary at the gap differences");
  return {a.passed && b.passed, a.detail + " | " + b.detail + " | carriers up to " + std::to_string(points) + " points"};
}

Outcome equivariant_round_trip() {
  std::mt19937 rng(777);
  Tally t;
  for (int trial = 0; trial < 50; ++trial) {
    const auto K = gen::uniform(rng, 1, 6);
    const std::int64_t period = std::int64_t{1} << K;
    const QuotientModel q(z1(), Subgroup::lattice(z1(), {{period}}));
    // pieces of length at most period/4 keep N_K away from the 2c-ball
    const auto d = gen::random_cyclic_tiling(q, std::max<std::int64_t>(1, period / 4), rng);
    const auto copies = gen::uniform(rng, 1, 4);
    const auto w = GroupWindow::box(z1(), {-copies * period}, {copies * period - 1});
    const auto label = [&] { return "trial " + std::to_string(trial) + " (K=" + std::to_string(K) + ")"; };
    try {
      const auto up = pullback_equivariant(d, q, w);
      t.check(up.invariance.passed, [&] { return label() + ": " + up.invariance.describe(); });
      const auto down = pushforward_equivariant(up.decomposition, w, q);
      t.check(same_pieces(down.decomposition, d), [&] { return label() + ": round trip changed the pieces"; });
    } catch (const Error& e) {
      t.check(false, [&] { return label() + ": " + e.what(); });
    }
  }
  return t.outcome("50 periodic tilings, N_K = 2^K Z");
}

Outcome game_victories() {
  Tally t;
  const auto line = GroupWindow::box(z1(), {-200}, {200});
  for (std::int64_t rho : {60, 120, 201}) {
    PointSubset ball(line.space());
    for (PointId p = 0; p < line.size(); ++p)
      if (std::llabs(line.element_of(p)[0]) < rho) ball.insert(p);
    for (Dist R = 1; R <= 25; ++R) {
      const auto g = play(line, {ball}, Challenge({R}), strategy_interval_z(), 4 * R);
      t.check(g.won && g.won_round == 1, [&] {
        return "ball l<" + std::to_string(rho) + " R=" + std::to_string(R) + ": " + g.outcome();
      });
    }
  }
  const auto square = GroupWindow::box(z2(), {-20, -20}, {20, 20});
  for (Dist R = 1; R <= 5; ++R) {
    const auto g = play(square, {square.all()}, Challenge({R, R}), strategy_coordinate_peel({1, 0}), 4 * R);
    t.check(g.won && g.won_round == 2, [&] { return "[-20,20]^2 R=" + std::to_string(R) + ": " + g.outcome(); });
  }
  return t.outcome("interval strategy on 3 balls x 25 challenges, coordinate peel on 5 challenges");
}

Outcome equivariant_sfdc() {
  const auto w = GroupWindow::box(z1(), {-128}, {128});
  const auto chain = NormalChain::powers(z1(), 2, 7);
  const auto v = equivariant_sfdc_check(w, chain, Challenge({4}), strategy_periodic_interval(32, 5), 16);
  std::ostringstream os;
  os << "(m,K) = (" << (v.m ? std::to_string(*v.m) : "-") << "," << (v.K ? std::to_string(*v.K) : "-") << ")";
  if (!v.passed) os << ": " << v.reason;
  return {v.passed && v.m == 1u && v.K == 5u, os.str()};
}

// Whether some coloring with k colors has every same-color component (points
// closer than r) of diameter at most B. Plain enumeration.
bool colorable_by_enumeration(const PointSubset& region, std::size_t k, Dist r, Dist B) {
  const auto pts = region.points();
  const auto& sp = region.space();
  const std::size_t n = pts.size();
  std::vector<std::size_t> color(n, 0);
  std::vector<std::size_t> comp(n);
  while (true) {
    std::iota(comp.begin(), comp.end(), 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (color[a] == color[b] && sp.dist(pts[a], pts[b]) < r && comp[b] > comp[a]) {
            comp[b] = comp[a];
            changed = true;
          }
    }
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = a + 1; b < n && ok; ++b)
        if (comp[a] == comp[b] && sp.dist(pts[a], pts[b]) > B) ok = false;
    if (ok) return true;
    std::size_t i = 0;
    while (i < n && ++color[i] == k) color[i++] = 0;
    if (i == n) return false;
  }
}

Outcome asdim_oracle() {
  std::mt19937 rng(4242);
  Tally t;
  const auto box = GroupWindow::box(z2(), {0, 0}, {5, 5});
  for (int trial = 0; trial < 50; ++trial) {
    PointSubset region(box.space());
    const auto want = static_cast<std::size_t>(gen::uniform(rng, 2, 12));
    while (region.size() < want) region.insert(static_cast<PointId>(rng() % box.size()));
    const auto r = static_cast<Dist>(gen::uniform(rng, 1, 4));
    const auto B = static_cast<Dist>(gen::uniform(rng, 1, 5));
    const auto res = asdim_at_scale(box.space(), region, r, B);
    for (std::size_t k = 2; k <= 3; ++k) {
      const bool brute = colorable_by_enumeration(region, k, r, B);
      t.check(res.optimal && brute == (res.n + 1 <= k), [&] {
        return "trial " + std::to_string(trial) + " with " + std::to_string(k) + " colors: solver n=" +
               std::to_string(res.n) + ", enumeration " + (brute ? "feasible" : "infeasible");
      });
    }
  }
  const auto line = GroupWindow::box(z1(), {0}, {63});
  const auto res = asdim_at_scale(line.space(), line.all(), 5, 10);
  t.check(res.optimal && res.n == 1, [&] { return "[0,63] gave n=" + std::to_string(res.n); });
  return t.outcome("50 random instances against 2- and 3-color enumeration; [0,63] r=5 B=10 n=" +
                   std::to_string(res.n));
}

Outcome coarse_equivalence() {
  const auto ones = GroupModel::integer_lattice(1, {{1}}, 128);
  const auto twos_threes = GroupModel::integer_lattice(1, {{2}, {3}}, 128);
  const auto a = GroupWindow::box(ones, {-30}, {30});
  const auto b = GroupWindow::box(twos_threes, {-30}, {30});
  auto id = [](const Element& e) { return e; };
  const auto f = map_between(a, b, id);
  const auto g = map_between(b, a, id);
  const auto floor = [](Dist t) { return t / 3; };
  for (Dist C = 0; C <= 2; ++C) {
    const auto v = check_coarse_equivalence(f, g, C, floor);
    if (!v.passed) continue;
    // envelopes must be monotone and grow on the window
    bool monotone = true;
    for (const auto* r : {&v.forward, &v.backward}) {
      Dist prev = 0;
      for (const auto& [t, s] : r->rho2_envelope) {
        monotone = monotone && s >= prev;
        prev = s;
      }
      monotone = monotone && prev > 0;
    }
    return {monotone, "C=" + std::to_string(C) + ", floor t/3, " + v.describe() +
                          (monotone ? "" : "; envelopes not monotone and growing")};
  }
  return {false, "no C <= 2 passes: " + check_coarse_equivalence(f, g, 2, floor).reason};
}

// H/K in G for the preimages of a subquotient of G/N0.
Subgroup preimage(const GroupModel& g, const QuotientModel& q, const Subgroup& s) {
  std::set<std::size_t> cosets;
  for (const auto& e : s.elements()) cosets.insert(static_cast<std::size_t>(e[0]));
  std::vector<Element> members;
  for (const auto& x : g.elements())
    if (cosets.count(q.coset_index(x))) members.push_back(x);
  return Subgroup::from_elements(g, std::move(members));
}

Outcome associated_family_check() {
  Tally t;
  const auto fam = associated_family(cyclic_group(4));
  std::multiset<std::pair<std::size_t, std::size_t>> shapes;
  for (const auto& sq : fam) shapes.insert({sq.upper().elements().size(), sq.lower().elements().size()});
  const std::multiset<std::pair<std::size_t, std::size_t>> want{{1, 1}, {2, 1}, {2, 2}, {4, 1}, {4, 2}, {4, 4}};
  t.check(shapes == want, [&] { return "Z/4Z family has " + std::to_string(fam.size()) + " members"; });

  std::size_t groups = 0, members = 0;
  for (const auto& g : small_groups(16)) {
    ++groups;
    const auto whole = Subgroup::whole(g);
    for (const auto& n0 : all_subgroups(g)) {
      if (!is_normal_in(n0, whole)) continue;
      const QuotientModel q(g, n0, 0);
      // each member of the quotient's family must come back as an isometric member of G's family
      for (const auto& sq : associated_family(q.as_group())) {
        ++members;
        const auto h = preimage(g, q, sq.upper());
        const auto k = preimage(g, q, sq.lower());
        const auto v = check_quotient_iso_metric(g, n0, {{h, k}});
        t.check(v[0].passed && v[0].order == sq.order(), [&] {
          return g.name() + " with |N0|=" + std::to_string(n0.elements().size()) + ": " + v[0].reason;
        });
      }
    }
  }
  return t.outcome("Z/4Z has " + std::to_string(fam.size()) + " members; " + std::to_string(members) +
                   " quotient-family members over " + std::to_string(groups) + " groups of order <= 16");
}

Outcome quotient_iso() {
  Tally t;
  std::size_t triples = 0, groups = 0;
  for (const auto& g : small_groups(24)) {
    ++groups;
    for (const auto& tr : admissible_triples(g)) {
      ++triples;
      const auto v = check_quotient_iso_metric(g, tr.n0, {{tr.upper, tr.lower}});
      t.check(v[0].passed, [&] { return g.name() + ": " + v[0].reason; });
    }
  }
  return t.outcome(std::to_string(triples) + " admissible triples in " + std::to_string(groups) + " groups");
}

Outcome cli_determinism() {
  using namespace boxfdc::cli;
  Tally t;
  const auto cache = fs::temp_directory_path() / ("boxfdc-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(cache);
  const std::map<std::string, std::string> runs{
      {"asdim_interval.ini", "asdim"},        {"box_z_powers.ini", "build-box"},
      {"equi_sfdc_z.ini", "equi-sfdc"},       {"family_c4.ini", "associated-family"},
      {"play_z2_peel.ini", "play"},           {"play_z_interval.ini", "play"},
      {"profile_z_23.ini", "profile-map"},    {"transform_z.ini", "transform"}};
  std::size_t scenarios = 0;
  for (const auto& [file, command] : runs) {
    ++scenarios;
    CommandOptions o;
    o.config_path = std::string(BOXFDC_SCENARIOS) + "/" + file;
    o.cache_dir = cache.string();
    const auto first = run_command(command, o);
    const auto second = run_command(command, o);
    t.check(report_text(first.report) == report_text(second.report), [&] { return file + " reports differ"; });
    if (command == "play" || command == "transform") {
      o.out_path = (cache / (file + ".json")).string();
      write_outputs(first, o);
      CommandOptions v = o;
      v.out_path.reset();
      v.input_path = o.out_path;
      const auto verified = run_command("verify", v);
      const bool same = verified.exit_code == first.exit_code &&
                        (command != "play" || verified.report["result"].value("matches_stored", false));
      t.check(same, [&] { return file + " does not re-verify to the stored verdict"; });
    }
  }
  fs::remove_all(cache);
  return t.outcome(std::to_string(scenarios) + " scenarios run twice");
}

struct Criterion {
  int number;
  std::string title;
  std::function<Outcome()> run;
  double seconds_limit;  // 0 when the criterion states no limit
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "metric axioms hold on every constructed space", metric_axioms, 10},
      {2, "quotient lengths equal coset minima", quotient_lengths, 0},
      {3, "projection maps balls onto balls", ball_pushforward, 0},
      {4, "injectivity radius along 2^i Z", injectivity, 0},
      {5, "transform postconditions on random sequences", transforms, 60},
      {6, "equivariant pullback and pushforward round trip", equivariant_round_trip, 0},
      {7, "game victories in exactly 1 and 2 rounds", game_victories, 30},
      {8, "equivariant sFDC on [-128,128]", equivariant_sfdc, 0},
      {9, "scale-r dimension solver against enumeration", asdim_oracle, 0},
      {10, "coarse equivalence of two generating sets of Z", coarse_equivalence, 0},
      {11, "associated family of Z/4Z and closure under quotients", associated_family_check, 0},
      {12, "quotient isomorphism on every admissible triple", quotient_iso, 0},
      {13, "reports are deterministic and transcripts re-verify", cli_determinism, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs << " s";
    if (c.seconds_limit > 0) {
      time << " (limit " << c.seconds_limit << " s)";
      if (secs >= c.seconds_limit) {
        o.passed = false;
        o.detail += "; too slow";
      }
    }
    if (!o.passed) ++failures;
    std::cout << (o.passed ? "[PASS]" : "[FAIL]") << " criterion " << c.number << ": " << c.title << " -- " << o.detail
              << " [" << time.str() << "]" << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
