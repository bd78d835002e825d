#include <boxfdc/errors.hpp>
#include <boxfdc/finite_groups.hpp>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace boxfdc {

namespace {

// Index-level multiplication table of a finite group.
struct Table {
  std::size_t n = 0;
  std::vector<std::size_t> mul;
  std::vector<std::size_t> inv;
  std::size_t id = 0;

  explicit Table(const GroupModel& g) : n(g.order()), mul(n * n), inv(n) {
    const auto& el = g.elements();
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = g.index_of(g.multiply(el[a], el[b]));
    for (std::size_t a = 0; a < n; ++a) inv[a] = g.index_of(g.invert(el[a]));
    id = g.index_of(g.identity());
  }
  std::size_t operator()(std::size_t a, std::size_t b) const { return mul[a * n + b]; }
};

std::vector<std::size_t> table_row_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

std::string power_label(const char* sym, std::size_t k) {
  if (k == 0) return "";
  if (k == 1) return sym;
  return std::string(sym) + "^" + std::to_string(k);
}

std::string word_label(const char* a, std::size_t x, const char* b, std::size_t y) {
  auto s = power_label(a, x) + power_label(b, y);
  return s.empty() ? "1" : s;
}

}  // namespace

GroupModel group_from_operation(std::size_t n, const std::function<std::size_t(std::size_t, std::size_t)>& op,
                                std::vector<std::size_t> generators, std::string name,
                                std::vector<std::string> labels) {
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = op(a, b);
  return GroupModel::finite_table(std::move(table), std::move(generators), std::move(name), std::move(labels));
}

GroupModel trivial_group() { return group_from_operation(1, [](auto, auto) { return 0; }, {}, "trivial", {"1"}); }

GroupModel cyclic_group(std::size_t n) {
  if (n == 0) throw PreconditionError("cyclic group of order 0");
  if (n == 1) return trivial_group();
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return group_from_operation(
      n, [n](std::size_t a, std::size_t b) { return (a + b) % n; }, {1}, "C" + std::to_string(n), labels);
}

GroupModel metacyclic_group(std::size_t m, std::size_t n, std::int64_t a, std::string name) {
  if (m == 0 || n == 0) throw PreconditionError("metacyclic group needs positive orders");
  const auto mm = static_cast<std::int64_t>(m);
  a = ((a % mm) + mm) % mm;
  std::vector<std::int64_t> pow(n + 1, 1 % mm);
  for (std::size_t k = 1; k <= n; ++k) pow[k] = pow[k - 1] * a % mm;
  if (pow[n] != 1 % mm) throw PreconditionError("a^n is not 1 mod m; the action is not defined");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m * n; ++i) labels.push_back(word_label("r", i % m, "s", i / m));
  auto op = [m, n, pow](std::size_t u, std::size_t v) {
    const std::size_t x1 = u % m, y1 = u / m, x2 = v % m, y2 = v / m;
    const auto x = (static_cast<std::int64_t>(x1) + pow[y1] * static_cast<std::int64_t>(x2)) %
                   static_cast<std::int64_t>(m);
    return static_cast<std::size_t>(x) + m * ((y1 + y2) % n);
  };
  if (name.empty()) name = "C" + std::to_string(m) + ":C" + std::to_string(n) + "(" + std::to_string(a) + ")";
  std::vector<std::size_t> gens;
  if (m > 1) gens.push_back(1);
  if (n > 1) gens.push_back(m);
  return group_from_operation(m * n, op, gens, name, labels);
}

GroupModel dihedral_group(std::size_t n) { return metacyclic_group(n, 2, -1, "D" + std::to_string(n)); }

GroupModel dicyclic_group(std::size_t n) {
  if (n < 1) throw PreconditionError("dicyclic group needs n >= 1");
  const std::size_t m = 2 * n;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < 2 * m; ++i) labels.push_back(word_label("a", i % m, "x", i / m));
  auto op = [m, n](std::size_t u, std::size_t v) {
    const std::size_t k = u % m, j = u / m, l = v % m, t = v / m;
    if (j == 0) return (k + l) % m + m * t;
    // a^k x * a^l x^t = a^(k-l) x^(1+t), and x^2 = a^n
    const std::size_t base = (k + m - l) % m;
    return t == 0 ? base + m : (base + n) % m;
  };
  return group_from_operation(2 * m, op, {1, m}, n == 2 ? "Q8" : "Dic" + std::to_string(n), labels);
}

GroupModel symmetric_group(std::size_t n) {
  if (n < 2) return trivial_group();
  std::vector<std::size_t> swap(n), cycle(n);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (std::size_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return GroupModel::permutation_group(n, {swap, cycle}, "S" + std::to_string(n));
}

GroupModel alternating_group(std::size_t n) {
  if (n < 3) return trivial_group();
  std::vector<std::vector<std::size_t>> gens;
  for (std::size_t i = 2; i < n; ++i) {
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    p[0] = 1;
    p[1] = i;
    p[i] = 0;
    gens.push_back(p);
  }
  return GroupModel::permutation_group(n, gens, "A" + std::to_string(n));
}

GroupModel direct_product(const GroupModel& a, const GroupModel& b, std::string name) {
  const Table ta(a), tb(b);
  const std::size_t na = ta.n, nb = tb.n;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < na * nb; ++i)
    labels.push_back("(" + a.format(a.elements()[i / nb]) + "," + b.format(b.elements()[i % nb]) + ")");
  std::vector<std::size_t> gens;
  for (const auto& g : a.generators()) gens.push_back(a.index_of(g) * nb + tb.id);
  for (const auto& g : b.generators()) gens.push_back(ta.id * nb + b.index_of(g));
  auto op = [&](std::size_t u, std::size_t v) { return ta(u / nb, v / nb) * nb + tb(u % nb, v % nb); };
  if (name.empty()) name = a.name() + "x" + b.name();
  return group_from_operation(na * nb, op, gens, name, labels);
}

GroupModel semidirect_product(const GroupModel& n_group, const GroupModel& q,
                              const std::vector<std::vector<std::size_t>>& action, std::string name) {
  const Table tn(n_group), tq(q);
  const std::size_t nn = tn.n, nq = tq.n;
  if (action.size() != nq) throw PreconditionError("action must list one automorphism per element of Q");
  for (const auto& perm : action)
    if (perm.size() != nn) throw PreconditionError("automorphism has the wrong size");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < nn * nq; ++i)
    labels.push_back("(" + n_group.format(n_group.elements()[i % nn]) + "," + q.format(q.elements()[i / nn]) + ")");
  std::vector<std::size_t> gens;
  for (const auto& g : n_group.generators()) gens.push_back(n_group.index_of(g) + nn * tq.id);
  for (const auto& g : q.generators()) gens.push_back(tn.id + nn * q.index_of(g));
  auto op = [&](std::size_t u, std::size_t v) {
    const std::size_t x1 = u % nn, y1 = u / nn, x2 = v % nn, y2 = v / nn;
    return tn(x1, action[y1][x2]) + nn * tq(y1, y2);
  };
  if (name.empty()) name = n_group.name() + ":" + q.name();
  return group_from_operation(nn * nq, op, gens, name, labels);
}

GroupModel matrix_group_mod_p(std::int64_t p, const std::vector<std::array<std::int64_t, 4>>& generators,
                              std::string name) {
  using M = std::array<std::int64_t, 4>;
  auto mul = [p](const M& x, const M& y) {
    return M{(x[0] * y[0] + x[1] * y[2]) % p, (x[0] * y[1] + x[1] * y[3]) % p, (x[2] * y[0] + x[3] * y[2]) % p,
             (x[2] * y[1] + x[3] * y[3]) % p};
  };
  std::vector<M> gens;
  for (auto g : generators) {
    for (auto& x : g) x = ((x % p) + p) % p;
    if ((g[0] * g[3] - g[1] * g[2]) % p == 0) throw PreconditionError("matrix generator is singular mod p");
    gens.push_back(g);
  }
  const M id{1, 0, 0, 1};
  std::set<M> found{id};
  std::vector<M> frontier{id};
  while (!frontier.empty()) {
    std::vector<M> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        auto y = mul(x, g);
        if (found.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  const std::vector<M> el(found.begin(), found.end());
  std::map<M, std::size_t> idx;
  for (std::size_t i = 0; i < el.size(); ++i) idx[el[i]] = i;
  std::vector<std::string> labels;
  for (const auto& m : el) {
    std::ostringstream os;
    os << "[" << m[0] << " " << m[1] << ";" << m[2] << " " << m[3] << "]";
    labels.push_back(os.str());
  }
  std::vector<std::size_t> gen_idx;
  for (const auto& g : gens) gen_idx.push_back(idx.at(g));
  if (name.empty()) name = "matrix group mod " + std::to_string(p);
  return group_from_operation(
      el.size(), [&](std::size_t a, std::size_t b) { return idx.at(mul(el[a], el[b])); }, gen_idx, name, labels);
}

namespace {

std::vector<std::size_t> unit_action(std::size_t m, std::int64_t a) {
  std::vector<std::size_t> perm(m);
  const auto mm = static_cast<std::int64_t>(m);
  for (std::size_t x = 0; x < m; ++x)
    perm[x] = static_cast<std::size_t>(((a * static_cast<std::int64_t>(x)) % mm + mm) % mm);
  return perm;
}

}  // namespace

std::vector<GroupModel> small_groups(std::size_t max_order) {
  if (max_order > 24) throw PreconditionError("the small group list stops at order 24");
  std::vector<GroupModel> out;
  auto add = [&](std::size_t order, const std::function<GroupModel()>& make) {
    if (order <= max_order) out.push_back(make());
  };
  auto C = [](std::size_t n) { return cyclic_group(n); };
  auto P = [](const GroupModel& a, const GroupModel& b, std::string name) { return direct_product(a, b, name); };

  add(1, [] { return trivial_group(); });
  for (std::size_t n : {2, 3, 4}) add(n, [&] { return C(n); });
  add(4, [&] { return P(C(2), C(2), "C2xC2"); });
  add(5, [&] { return C(5); });
  add(6, [&] { return C(6); });
  add(6, [] { return metacyclic_group(3, 2, -1, "S3"); });
  add(7, [&] { return C(7); });
  add(8, [&] { return C(8); });
  add(8, [&] { return P(C(4), C(2), "C4xC2"); });
  add(8, [&] { return P(P(C(2), C(2), "C2xC2"), C(2), "C2^3"); });
  add(8, [] { return dihedral_group(4); });
  add(8, [] { return dicyclic_group(2); });
  add(9, [&] { return C(9); });
  add(9, [&] { return P(C(3), C(3), "C3xC3"); });
  add(10, [&] { return C(10); });
  add(10, [] { return dihedral_group(5); });
  add(11, [&] { return C(11); });
  add(12, [&] { return C(12); });
  add(12, [&] { return P(C(6), C(2), "C6xC2"); });
  add(12, [] { return dihedral_group(6); });
  add(12, [] { return alternating_group(4); });
  add(12, [] { return metacyclic_group(3, 4, -1, "Dic3"); });
  add(13, [&] { return C(13); });
  add(14, [&] { return C(14); });
  add(14, [] { return dihedral_group(7); });
  add(15, [&] { return C(15); });
  add(16, [&] { return C(16); });
  add(16, [&] { return P(C(4), C(4), "C4xC4"); });
  add(16, [&] { return P(C(8), C(2), "C8xC2"); });
  add(16, [&] { return P(P(C(4), C(2), "C4xC2"), C(2), "C4xC2^2"); });
  add(16, [&] { return P(P(C(2), C(2), "C2xC2"), P(C(2), C(2), "C2xC2"), "C2^4"); });
  add(16, [] { return dihedral_group(8); });
  add(16, [] { return dicyclic_group(4); });
  add(16, [] { return metacyclic_group(8, 2, 3, "SD16"); });
  add(16, [] { return metacyclic_group(8, 2, 5, "M16"); });
  add(16, [] { return metacyclic_group(4, 4, -1, "C4:C4"); });
  add(16, [&] {
    auto v = P(C(2), C(2), "C2xC2");
    const std::vector<std::size_t> swap{0, 2, 1, 3};  // (i,j) -> (j,i) on index 2i+j
    std::vector<std::vector<std::size_t>> act{{0, 1, 2, 3}, swap, {0, 1, 2, 3}, swap};
    return semidirect_product(v, C(4), act, "C2^2:C4");
  });
  add(16, [] { return direct_product(dihedral_group(4), cyclic_group(2), "D4xC2"); });
  add(16, [] { return direct_product(dicyclic_group(2), cyclic_group(2), "Q8xC2"); });
  add(16, [] { return matrix_group_mod_p(5, {{0, 1, 1, 0}, {1, 0, 0, 4}, {2, 0, 0, 2}}, "C4oD4"); });
  add(17, [&] { return C(17); });
  add(18, [&] { return C(18); });
  add(18, [&] { return P(C(6), C(3), "C6xC3"); });
  add(18, [] { return dihedral_group(9); });
  add(18, [] { return direct_product(metacyclic_group(3, 2, -1, "S3"), cyclic_group(3), "S3xC3"); });
  add(18, [&] {
    auto v = P(C(3), C(3), "C3xC3");
    std::vector<std::size_t> neg(9);
    for (std::size_t i = 0; i < 9; ++i) neg[i] = ((3 - i / 3) % 3) * 3 + (3 - i % 3) % 3;
    return semidirect_product(v, C(2), {table_row_indices(9), neg}, "C3^2:C2");
  });
  add(19, [&] { return C(19); });
  add(20, [&] { return C(20); });
  add(20, [&] { return P(C(10), C(2), "C10xC2"); });
  add(20, [] { return dihedral_group(10); });
  add(20, [] { return dicyclic_group(5); });
  add(20, [] { return metacyclic_group(5, 4, 2, "F20"); });
  add(21, [&] { return C(21); });
  add(21, [] { return metacyclic_group(7, 3, 2, "C7:C3"); });
  add(22, [&] { return C(22); });
  add(22, [] { return dihedral_group(11); });
  add(23, [&] { return C(23); });
  add(24, [&] { return C(24); });
  add(24, [&] { return P(C(12), C(2), "C12xC2"); });
  add(24, [&] { return P(P(C(6), C(2), "C6xC2"), C(2), "C6xC2^2"); });
  add(24, [] { return symmetric_group(4); });
  add(24, [] { return matrix_group_mod_p(3, {{1, 1, 0, 1}, {1, 0, 1, 1}}, "SL(2,3)"); });
  add(24, [] { return dicyclic_group(6); });
  add(24, [] { return metacyclic_group(3, 8, 2, "C3:C8"); });
  add(24, [] { return direct_product(cyclic_group(4), metacyclic_group(3, 2, -1, "S3"), "C4xS3"); });
  add(24, [] { return dihedral_group(12); });
  add(24, [] { return direct_product(cyclic_group(2), metacyclic_group(3, 4, -1, "Dic3"), "C2xDic3"); });
  add(24, [] {
    // D4 acts on C3 through r -> inversion, s -> identity
    auto d4 = dihedral_group(4);
    std::vector<std::vector<std::size_t>> act;
    for (std::size_t i = 0; i < 8; ++i) act.push_back(unit_action(3, (i % 4) % 2 == 0 ? 1 : -1));
    return semidirect_product(cyclic_group(3), d4, act, "C3:D4");
  });
  add(24, [] { return direct_product(cyclic_group(3), dihedral_group(4), "C3xD4"); });
  add(24, [] { return direct_product(cyclic_group(3), dicyclic_group(2), "C3xQ8"); });
  add(24, [] { return direct_product(cyclic_group(2), alternating_group(4), "C2xA4"); });
  add(24, [] {
    return direct_product(direct_product(cyclic_group(2), cyclic_group(2), "C2xC2"),
                          metacyclic_group(3, 2, -1, "S3"), "C2^2xS3");
  });
  return out;
}

// ---------------------------------------------------------------------------

namespace {

using Bits = boost::dynamic_bitset<>;

Bits closure(const Table& t, Bits members, std::size_t extra) {
  std::vector<std::size_t> all;
  for (auto i = members.find_first(); i != Bits::npos; i = members.find_next(i)) all.push_back(i);
  std::vector<std::size_t> queue{extra};
  members.set(extra);
  all.push_back(extra);
  while (!queue.empty()) {
    const auto x = queue.back();
    queue.pop_back();
    const std::size_t count = all.size();
    for (std::size_t k = 0; k < count; ++k) {
      for (auto y : {t(x, all[k]), t(all[k], x)}) {
        if (!members.test(y)) {
          members.set(y);
          all.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  return members;
}

std::vector<Element> members_of(const GroupModel& g, const Bits& b) {
  std::vector<Element> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(g.elements()[i]);
  return out;
}

}  // namespace

std::vector<Subgroup> all_subgroups(const GroupModel& g, std::size_t cap) {
  if (!g.is_finite()) throw PreconditionError("subgroup enumeration needs a finite group");
  if (g.order() > cap)
    throw CapExceeded("group of order " + std::to_string(g.order()) + " exceeds the enumeration cap " +
                      std::to_string(cap) + "; raise the cap to continue");
  const Table t(g);
  Bits trivial(t.n);
  trivial.set(t.id);
  std::set<Bits> seen{trivial};
  std::vector<Bits> frontier{trivial};
  while (!frontier.empty()) {
    std::vector<Bits> next;
    for (const auto& s : frontier) {
      for (std::size_t x = 0; x < t.n; ++x) {
        if (s.test(x)) continue;
        auto c = closure(t, s, x);
        if (seen.insert(c).second) next.push_back(std::move(c));
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> order;
  std::vector<Bits> list(seen.begin(), seen.end());
  std::vector<std::size_t> perm(list.size());
  std::iota(perm.begin(), perm.end(), 0);
  auto key = [&](std::size_t i) {
    std::vector<std::size_t> idx;
    for (auto j = list[i].find_first(); j != Bits::npos; j = list[i].find_next(j)) idx.push_back(j);
    return std::make_pair(list[i].count(), idx);
  };
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  std::vector<Subgroup> out;
  for (auto i : perm) out.push_back(Subgroup::from_elements(g, members_of(g, list[i])));
  return out;
}

bool is_contained_in(const Subgroup& k, const Subgroup& h) {
  const auto& members = k.elements();
  return std::all_of(members.begin(), members.end(), [&](const Element& x) { return h.contains(x); });
}

bool is_normal_in(const Subgroup& k, const Subgroup& h) {
  if (!is_contained_in(k, h)) return false;
  const auto& g = h.parent();
  for (const auto& x : h.elements())
    for (const auto& n : k.elements())
      if (!k.contains(g.multiply(g.multiply(x, n), g.invert(x)))) return false;
  return true;
}

Subquotient::Subquotient(Subgroup h, Subgroup k) : h_(std::move(h)), k_(std::move(k)) {
  if (!is_normal_in(k_, h_)) throw PreconditionError("lower subgroup is not normal in the upper one");
  const auto& g = h_.parent();
  const std::size_t n = g.order();
  coset_of_parent_index_.assign(n, static_cast<std::size_t>(-1));
  std::map<Element, std::vector<std::size_t>> by_key;
  for (const auto& x : h_.elements()) {
    std::vector<std::size_t> coset;
    for (const auto& kk : k_.elements()) coset.push_back(g.index_of(g.multiply(x, kk)));
    by_key[g.elements()[*std::min_element(coset.begin(), coset.end())]] = coset;
  }
  for (const auto& [key, coset] : by_key) {
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (auto i : coset) {
      coset_of_parent_index_[i] = cosets_.size();
      best = std::min(best, g.word_length(g.elements()[i]));
    }
    cosets_.push_back(key);
    lengths_.push_back(best);
  }
  const std::size_t m = cosets_.size();
  std::vector<Dist> matrix(m * m, 0);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    labels.push_back("[" + g.format(cosets_[a]) + "]");
    const auto inv = g.invert(cosets_[a]);
    for (std::size_t b = 0; b < m; ++b) matrix[a * m + b] = static_cast<Dist>(length(g.multiply(inv, cosets_[b])));
  }
  space_ = make_space(std::move(labels), std::move(matrix));
}

std::size_t Subquotient::coset_index(const Element& x) const {
  const auto c = coset_of_parent_index_.at(h_.parent().index_of(x));
  if (c == static_cast<std::size_t>(-1)) throw PreconditionError("element lies outside the upper subgroup");
  return c;
}

std::string Subquotient::describe() const {
  return "H/K with |H| = " + std::to_string(h_.elements().size()) + ", |K| = " + std::to_string(k_.elements().size());
}

std::vector<Subquotient> associated_family(const GroupModel& g, std::size_t cap) {
  const auto subs = all_subgroups(g, cap);
  std::vector<Subquotient> out;
  for (const auto& h : subs)
    for (const auto& k : subs)
      if (is_normal_in(k, h)) out.emplace_back(h, k);
  return out;
}

std::string group_signature(const GroupModel& g) {
  const Table t(g);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> order_centralizer;
  std::size_t center = 0;
  for (std::size_t x = 0; x < t.n; ++x) {
    std::size_t ord = 1;
    for (std::size_t y = x; y != t.id; y = t(y, x)) ++ord;
    std::size_t cent = 0;
    for (std::size_t y = 0; y < t.n; ++y) cent += t(x, y) == t(y, x);
    if (cent == t.n) ++center;
    ++order_centralizer[{ord, cent}];
  }
  std::vector<Element> commutators;
  for (std::size_t x = 0; x < t.n; ++x)
    for (std::size_t y = 0; y < t.n; ++y)
      commutators.push_back(g.elements()[t(t(t.inv[x], t.inv[y]), t(x, y))]);
  const auto derived = Subgroup::generated_by(g, commutators).elements().size();
  std::map<std::pair<std::size_t, bool>, std::size_t> subgroup_counts;
  const auto whole = Subgroup::whole(g);
  for (const auto& s : all_subgroups(g, t.n)) ++subgroup_counts[{s.elements().size(), is_normal_in(s, whole)}];

  std::ostringstream os;
  os << "order=" << t.n << " center=" << center << " derived=" << derived << " elts=";
  for (const auto& [k, v] : order_centralizer) os << k.first << "/" << k.second << ":" << v << ",";
  os << " subs=";
  for (const auto& [k, v] : subgroup_counts) os << k.first << (k.second ? "n" : "") << ":" << v << ",";
  return os.str();
}

}  // namespace boxfdc
