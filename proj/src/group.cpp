#include <boxfdc/errors.hpp>
#include <boxfdc/group.hpp>

#include <algorithm>
#include <deque>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace boxfdc {

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ e.size();
  for (auto x : e) h ^= std::hash<std::int64_t>{}(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

std::string format_element(const Element& e) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < e.size(); ++i) os << (i ? "," : "") << e[i];
  os << ')';
  return os.str();
}

std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::integer_lattice:
      return "integer_lattice";
    case GroupKind::finite_table:
      return "finite_table";
    case GroupKind::permutation_group:
      return "permutation_group";
  }
  return "unknown";
}

namespace detail {

struct GroupData {
  GroupKind kind{};
  std::string name;
  std::vector<Element> generators;
  Element identity;

  // integer lattices
  std::size_t rank = 0;
  bool standard = false;
  std::int64_t window = 0;
  mutable std::once_flag bfs_once;
  mutable ElementMap<std::int64_t> bfs_lengths;

  // finite groups (elements sorted lexicographically)
  std::vector<Element> elements;
  ElementMap<std::size_t> index;
  std::vector<std::uint32_t> table;
  std::vector<std::uint32_t> inverse;
  std::vector<std::int64_t> lengths;
  std::vector<std::size_t> gen_index;
  std::vector<std::string> labels;

  std::size_t finite_index(const Element& e) const {
    auto it = index.find(e);
    if (it == index.end()) throw PreconditionError("not an element of " + name + ": " + format_element(e));
    return it->second;
  }

  void lattice_bfs() const {
    std::call_once(bfs_once, [this] {
      Element zero(rank, 0);
      bfs_lengths.emplace(zero, 0);
      std::vector<Element> frontier{zero};
      for (std::int64_t len = 1; len <= window && !frontier.empty(); ++len) {
        std::vector<Element> next;
        for (const auto& x : frontier) {
          for (const auto& g : generators) {
            Element y = x;
            for (std::size_t i = 0; i < rank; ++i) y[i] += g[i];
            if (bfs_lengths.emplace(y, len).second) next.push_back(std::move(y));
          }
        }
        frontier = std::move(next);
      }
    });
  }

  // Lengths from the identity by breadth-first search over generator indices.
  void finite_bfs() {
    const std::size_t n = elements.size();
    lengths.assign(n, -1);
    const std::size_t id = index.at(identity);
    lengths[id] = 0;
    std::deque<std::size_t> queue{id};
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      for (auto g : gen_index) {
        auto y = table[x * n + g];
        if (lengths[y] < 0) {
          lengths[y] = lengths[x] + 1;
          queue.push_back(y);
        }
      }
    }
    if (std::any_of(lengths.begin(), lengths.end(), [](std::int64_t l) { return l < 0; }))
      throw PreconditionError("generators of " + name + " do not generate the group");
  }

  void finish_finite(const std::vector<std::size_t>& gens) {
    const std::size_t n = elements.size();
    inverse.assign(n, 0);
    const std::size_t id = index.at(identity);
    for (std::size_t a = 0; a < n; ++a) {
      bool found = false;
      for (std::size_t b = 0; b < n && !found; ++b) {
        if (table[a * n + b] == id) {
          inverse[a] = static_cast<std::uint32_t>(b);
          found = true;
        }
      }
      if (!found) throw PreconditionError("element without inverse in " + name);
    }
    // symmetric generating set: given generators first, then missing inverses
    std::vector<std::size_t> sym;
    for (auto g : gens)
      if (std::find(sym.begin(), sym.end(), g) == sym.end()) sym.push_back(g);
    for (auto g : gens) {
      std::size_t inv = inverse[g];
      if (std::find(sym.begin(), sym.end(), inv) == sym.end()) sym.push_back(inv);
    }
    gen_index = sym;
    generators.clear();
    for (auto g : sym) generators.push_back(elements[g]);
    finite_bfs();
  }
};

}  // namespace detail

using detail::GroupData;

namespace {

Element compose(const Element& a, const Element& b) {
  Element out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[static_cast<std::size_t>(b[i])];
  return out;
}

// All vectors with l1 norm < radius in lexicographic order.
void enumerate_l1(std::size_t rank, std::int64_t budget, Element& cur, std::size_t pos, std::vector<Element>& out) {
  if (pos == rank) {
    out.push_back(cur);
    return;
  }
  for (std::int64_t x = -budget; x <= budget; ++x) {
    cur[pos] = x;
    enumerate_l1(rank, budget - std::llabs(x), cur, pos + 1, out);
  }
}

}  // namespace

GroupModel GroupModel::integer_lattice(std::size_t rank, std::int64_t window_radius) {
  std::vector<Element> gens;
  for (std::size_t i = 0; i < rank; ++i) {
    Element e(rank, 0);
    e[i] = 1;
    gens.push_back(e);
    e[i] = -1;
    gens.push_back(e);
  }
  auto d = std::make_shared<GroupData>();
  d->kind = GroupKind::integer_lattice;
  d->name = "Z^" + std::to_string(rank);
  d->generators = std::move(gens);
  d->identity = Element(rank, 0);
  d->rank = rank;
  d->standard = true;
  d->window = window_radius;
  return GroupModel(std::move(d));
}

GroupModel GroupModel::integer_lattice(std::size_t rank, std::vector<Element> generators,
                                       std::int64_t window_radius) {
  std::vector<Element> sym;
  for (const auto& g : generators) {
    if (g.size() != rank) throw PreconditionError("lattice generator has the wrong dimension");
    if (std::all_of(g.begin(), g.end(), [](std::int64_t x) { return x == 0; })) continue;
    if (std::find(sym.begin(), sym.end(), g) == sym.end()) sym.push_back(g);
  }
  for (const auto& g : std::vector<Element>(sym)) {
    Element neg = g;
    for (auto& x : neg) x = -x;
    if (std::find(sym.begin(), sym.end(), neg) == sym.end()) sym.push_back(neg);
  }
  IntegerLattice span(rank, sym);
  if (!span.full_rank() || span.index() != 1) throw PreconditionError("generators do not generate Z^" + std::to_string(rank));

  auto d = std::make_shared<GroupData>();
  d->kind = GroupKind::integer_lattice;
  std::ostringstream name;
  name << "Z^" << rank << " gens {";
  for (std::size_t i = 0; i < sym.size(); ++i) name << (i ? " " : "") << format_element(sym[i]);
  name << "}";
  d->name = name.str();
  d->generators = std::move(sym);
  d->identity = Element(rank, 0);
  d->rank = rank;
  d->standard = false;
  d->window = window_radius;
  return GroupModel(std::move(d));
}

GroupModel GroupModel::finite_table(std::vector<std::vector<std::size_t>> table, std::vector<std::size_t> generators,
                                    std::string name, std::vector<std::string> labels) {
  const std::size_t n = table.size();
  if (n == 0) throw PreconditionError("empty multiplication table");
  if (!labels.empty() && labels.size() != n) throw PreconditionError("label count does not match the table");
  auto d = std::make_shared<GroupData>();
  d->kind = GroupKind::finite_table;
  d->name = name.empty() ? "table group of order " + std::to_string(n) : std::move(name);
  d->table.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw PreconditionError("multiplication table is not square");
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) throw PreconditionError("multiplication table entry out of range");
      d->table[a * n + b] = static_cast<std::uint32_t>(table[a][b]);
    }
  }
  std::optional<std::size_t> id;
  for (std::size_t e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) id = e;
  }
  if (!id) throw PreconditionError("multiplication table has no identity");
  if (n <= 256) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (table[table[a][b]][c] != table[a][table[b][c]])
            throw PreconditionError("multiplication table is not associative");
  }
  for (std::size_t i = 0; i < n; ++i) {
    d->elements.push_back(Element{static_cast<std::int64_t>(i)});
    d->index.emplace(d->elements.back(), i);
  }
  for (auto g : generators)
    if (g >= n) throw PreconditionError("generator index out of range");
  d->identity = d->elements[*id];
  d->labels = std::move(labels);
  d->finish_finite(generators);
  return GroupModel(std::move(d));
}

GroupModel GroupModel::permutation_group(std::size_t degree, std::vector<std::vector<std::size_t>> generators,
                                         std::string name) {
  std::vector<Element> gens;
  for (const auto& p : generators) {
    if (p.size() != degree) throw PreconditionError("permutation has the wrong degree");
    std::vector<bool> seen(degree, false);
    Element e;
    for (auto x : p) {
      if (x >= degree || seen[x]) throw PreconditionError("not a permutation");
      seen[x] = true;
      e.push_back(static_cast<std::int64_t>(x));
    }
    gens.push_back(std::move(e));
  }
  Element id(degree);
  std::iota(id.begin(), id.end(), 0);

  std::set<Element> found{id};
  std::vector<Element> frontier{id};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        auto y = compose(x, g);
        if (found.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
    if (found.size() > 100000) throw CapExceeded("permutation group larger than 100000 elements");
  }

  auto d = std::make_shared<GroupData>();
  d->kind = GroupKind::permutation_group;
  d->name = name.empty() ? "permutation group of degree " + std::to_string(degree) : std::move(name);
  d->elements.assign(found.begin(), found.end());
  const std::size_t n = d->elements.size();
  for (std::size_t i = 0; i < n; ++i) d->index.emplace(d->elements[i], i);
  d->table.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      d->table[a * n + b] = static_cast<std::uint32_t>(d->index.at(compose(d->elements[a], d->elements[b])));
  d->identity = id;
  std::vector<std::size_t> gen_idx;
  for (const auto& g : gens) gen_idx.push_back(d->index.at(g));
  d->finish_finite(gen_idx);
  return GroupModel(std::move(d));
}

GroupKind GroupModel::kind() const { return data_->kind; }
const std::string& GroupModel::name() const { return data_->name; }
std::size_t GroupModel::rank() const { return data_->rank; }
const std::vector<Element>& GroupModel::generators() const { return data_->generators; }
const Element& GroupModel::identity() const { return data_->identity; }
bool GroupModel::is_finite() const { return data_->kind != GroupKind::integer_lattice; }
std::int64_t GroupModel::window_radius() const { return data_->window; }
bool GroupModel::has_closed_form_length() const { return data_->standard; }

Element GroupModel::multiply(const Element& a, const Element& b) const {
  const auto& d = *data_;
  if (d.kind == GroupKind::integer_lattice) {
    if (a.size() != d.rank || b.size() != d.rank) throw PreconditionError("lattice element has the wrong dimension");
    Element out(d.rank);
    for (std::size_t i = 0; i < d.rank; ++i) out[i] = a[i] + b[i];
    return out;
  }
  const std::size_t n = d.elements.size();
  return d.elements[d.table[d.finite_index(a) * n + d.finite_index(b)]];
}

Element GroupModel::invert(const Element& a) const {
  const auto& d = *data_;
  if (d.kind == GroupKind::integer_lattice) {
    Element out = a;
    for (auto& x : out) x = -x;
    return out;
  }
  return d.elements[d.inverse[d.finite_index(a)]];
}

bool GroupModel::is_element(const Element& e) const {
  if (data_->kind == GroupKind::integer_lattice) return e.size() == data_->rank;
  return data_->index.count(e) > 0;
}

std::size_t GroupModel::order() const {
  if (!is_finite()) throw PreconditionError(name() + " is infinite");
  return data_->elements.size();
}

const std::vector<Element>& GroupModel::elements() const {
  if (!is_finite()) throw PreconditionError(name() + " is infinite; use a window");
  return data_->elements;
}

std::size_t GroupModel::index_of(const Element& e) const {
  if (!is_finite()) throw PreconditionError(name() + " is infinite");
  return data_->finite_index(e);
}

std::int64_t GroupModel::word_length(const Element& e) const {
  const auto& d = *data_;
  if (d.kind != GroupKind::integer_lattice) return d.lengths[d.finite_index(e)];
  if (e.size() != d.rank) throw PreconditionError("lattice element has the wrong dimension");
  if (d.standard) {
    std::int64_t s = 0;
    for (auto x : e) s += std::llabs(x);
    return s;
  }
  return word_length_by_search(e);
}

std::int64_t GroupModel::word_length_by_search(const Element& e) const {
  const auto& d = *data_;
  if (d.kind != GroupKind::integer_lattice) return d.lengths[d.finite_index(e)];
  if (e.size() != d.rank) throw PreconditionError("lattice element has the wrong dimension");
  d.lattice_bfs();
  auto it = d.bfs_lengths.find(e);
  if (it == d.bfs_lengths.end())
    throw OutOfWindow("element " + format_element(e) + " lies beyond the search window of radius " +
                      std::to_string(d.window) + " in " + d.name);
  return it->second;
}

std::vector<Element> GroupModel::ball(std::int64_t radius) const {
  const auto& d = *data_;
  std::vector<Element> out;
  if (radius <= 0) return out;
  if (d.kind != GroupKind::integer_lattice) {
    for (std::size_t i = 0; i < d.elements.size(); ++i)
      if (d.lengths[i] < radius) out.push_back(d.elements[i]);
    return out;
  }
  if (d.standard) {
    Element cur(d.rank, 0);
    enumerate_l1(d.rank, radius - 1, cur, 0, out);
    return out;
  }
  if (radius - 1 > d.window)
    throw OutOfWindow("ball of radius " + std::to_string(radius) + " exceeds the search window of " + d.name);
  d.lattice_bfs();
  for (const auto& [e, len] : d.bfs_lengths)
    if (len < radius) out.push_back(e);
  std::sort(out.begin(), out.end());
  return out;
}

std::string GroupModel::format(const Element& e) const {
  const auto& d = *data_;
  if (d.kind == GroupKind::integer_lattice && d.rank == 1 && e.size() == 1) return std::to_string(e[0]);
  if (d.kind == GroupKind::finite_table) {
    auto i = d.finite_index(e);
    return d.labels.empty() ? "g" + std::to_string(i) : d.labels[i];
  }
  if (d.kind == GroupKind::permutation_group) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < e.size(); ++i) os << (i ? " " : "") << e[i];
    os << ']';
    return os.str();
  }
  return format_element(e);
}

// ---------------------------------------------------------------------------

namespace detail {

struct SubgroupData {
  GroupModel parent;
  std::optional<IntegerLattice> lattice;
  std::vector<Element> members;       // finite subgroups, lexicographic
  std::vector<char> member_flag;      // finite parents, by parent index
  std::vector<std::size_t> coset_min; // finite parents: parent index -> key index
};

}  // namespace detail

namespace {

std::shared_ptr<detail::SubgroupData> finite_subgroup_data(const GroupModel& parent, std::vector<Element> members) {
  auto d = std::make_shared<detail::SubgroupData>(detail::SubgroupData{parent, std::nullopt, {}, {}, {}});
  const std::size_t n = parent.order();
  d->member_flag.assign(n, 0);
  for (const auto& m : members) d->member_flag[parent.index_of(m)] = 1;
  for (std::size_t i = 0; i < n; ++i)
    if (d->member_flag[i]) d->members.push_back(parent.elements()[i]);
  d->coset_min.assign(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (d->coset_min[i] != n) continue;
    // elements are sorted, so the least member index is the lexicographic minimum
    std::vector<std::size_t> coset;
    for (const auto& s : d->members) coset.push_back(parent.index_of(parent.multiply(parent.elements()[i], s)));
    const auto key = *std::min_element(coset.begin(), coset.end());
    for (auto c : coset) d->coset_min[c] = key;
  }
  return d;
}

}  // namespace

Subgroup Subgroup::lattice(const GroupModel& parent, std::vector<Element> basis) {
  if (parent.kind() != GroupKind::integer_lattice) throw PreconditionError("sublattices need an integer lattice parent");
  auto d = std::make_shared<detail::SubgroupData>(
      detail::SubgroupData{parent, IntegerLattice(parent.rank(), std::move(basis)), {}, {}, {}});
  if (d->lattice->rank() == 0) d->members.push_back(parent.identity());
  return Subgroup(std::move(d));
}

Subgroup Subgroup::generated_by(const GroupModel& parent, std::vector<Element> gens) {
  if (parent.kind() == GroupKind::integer_lattice) return lattice(parent, std::move(gens));
  std::set<Element> found{parent.identity()};
  std::vector<Element> frontier{parent.identity()};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        auto y = parent.multiply(x, g);
        if (found.insert(y).second) next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return Subgroup(finite_subgroup_data(parent, {found.begin(), found.end()}));
}

Subgroup Subgroup::from_elements(const GroupModel& parent, std::vector<Element> members) {
  if (!parent.is_finite()) throw PreconditionError("explicit member lists need a finite parent");
  auto sub = Subgroup(finite_subgroup_data(parent, std::move(members)));
  if (!sub.contains(parent.identity())) throw PreconditionError("subgroup member list lacks the identity");
  if (auto bad = sub.closure_violation(std::numeric_limits<std::int64_t>::max()))
    throw PreconditionError("member list is not closed: " + parent.format(bad->first) + " * " +
                            parent.format(bad->second) + "^-1 is missing");
  return sub;
}

Subgroup Subgroup::trivial(const GroupModel& parent) {
  if (parent.kind() == GroupKind::integer_lattice) return lattice(parent, {});
  return Subgroup(finite_subgroup_data(parent, {parent.identity()}));
}

Subgroup Subgroup::whole(const GroupModel& parent) {
  if (parent.kind() == GroupKind::integer_lattice) {
    std::vector<Element> basis;
    for (std::size_t i = 0; i < parent.rank(); ++i) {
      Element e(parent.rank(), 0);
      e[i] = 1;
      basis.push_back(e);
    }
    return lattice(parent, basis);
  }
  return Subgroup(finite_subgroup_data(parent, parent.elements()));
}

const GroupModel& Subgroup::parent() const { return data_->parent; }

bool Subgroup::contains(const Element& e) const {
  if (data_->lattice) return data_->lattice->contains(e);
  return data_->member_flag[data_->parent.index_of(e)] != 0;
}

std::vector<Element> Subgroup::members_within(std::int64_t radius) const {
  if (data_->parent.is_finite()) {
    std::vector<Element> out;
    for (const auto& m : data_->members)
      if (data_->parent.word_length(m) < radius) out.push_back(m);
    return out;
  }
  std::vector<Element> out;
  for (auto& e : data_->parent.ball(radius))
    if (contains(e)) out.push_back(std::move(e));
  return out;
}

bool Subgroup::has_finite_index() const { return !data_->lattice || data_->lattice->full_rank(); }

std::size_t Subgroup::index() const {
  if (data_->lattice) return data_->lattice->index();
  return data_->parent.order() / data_->members.size();
}

bool Subgroup::is_finite() const { return !data_->lattice || data_->lattice->rank() == 0; }

const std::vector<Element>& Subgroup::elements() const {
  if (!is_finite()) throw PreconditionError("subgroup is infinite");
  return data_->members;
}

const IntegerLattice* Subgroup::lattice() const { return data_->lattice ? &*data_->lattice : nullptr; }

Element Subgroup::coset_key(const Element& e) const {
  if (data_->lattice) return data_->lattice->reduce(e);
  return data_->parent.elements()[data_->coset_min[data_->parent.index_of(e)]];
}

std::optional<std::pair<Element, Element>> Subgroup::closure_violation(std::int64_t radius) const {
  const auto members = members_within(radius);
  const auto& g = data_->parent;
  for (const auto& a : members)
    for (const auto& b : members)
      if (!contains(g.multiply(a, g.invert(b)))) return std::make_pair(a, b);
  return std::nullopt;
}

std::optional<std::pair<Element, Element>> Subgroup::normality_violation(std::int64_t radius) const {
  const auto& g = data_->parent;
  const auto members = members_within(radius);
  const auto window = g.is_finite() ? g.elements() : g.ball(radius);
  for (const auto& x : window)
    for (const auto& n : members)
      if (!contains(g.multiply(g.multiply(x, n), g.invert(x)))) return std::make_pair(x, n);
  return std::nullopt;
}

std::string Subgroup::describe() const {
  std::ostringstream os;
  if (data_->lattice) {
    os << "sublattice basis [";
    const auto& rows = data_->lattice->basis();
    for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? " " : "") << format_element(rows[i]);
    os << "]";
  } else {
    os << "subgroup of order " << data_->members.size() << " in " << data_->parent.name();
  }
  return os.str();
}

// ---------------------------------------------------------------------------

GroupWindow::GroupWindow(GroupModel g, std::vector<Element> elems, SpacePtr space)
    : group_(std::move(g)), elements_(std::move(elems)), space_(std::move(space)) {
  auto idx = std::make_shared<ElementMap<PointId>>();
  for (PointId p = 0; p < elements_.size(); ++p)
    if (!idx->emplace(elements_[p], p).second) throw PreconditionError("window lists an element twice");
  index_ = std::move(idx);
}

GroupWindow GroupWindow::of(const GroupModel& g, std::vector<Element> elements) {
  std::vector<std::string> labels;
  labels.reserve(elements.size());
  for (const auto& e : elements) {
    if (!g.is_element(e)) throw PreconditionError("window element " + format_element(e) + " is not in " + g.name());
    labels.push_back(g.format(e));
  }
  std::vector<Dist> matrix(elements.size() * elements.size(), 0);
  const std::size_t n = elements.size();
  for (std::size_t p = 0; p < n; ++p) {
    const auto inv = g.invert(elements[p]);
    for (std::size_t q = p + 1; q < n; ++q) {
      const auto d = static_cast<Dist>(g.word_length(g.multiply(inv, elements[q])));
      matrix[p * n + q] = d;
      matrix[q * n + p] = d;
    }
  }
  auto space = make_space(std::move(labels), std::move(matrix), Validation::skip);
  return GroupWindow(g, std::move(elements), std::move(space));
}

GroupWindow GroupWindow::ball(const GroupModel& g, std::int64_t radius) { return of(g, g.ball(radius)); }

GroupWindow GroupWindow::whole(const GroupModel& g) { return of(g, g.elements()); }

GroupWindow GroupWindow::box(const GroupModel& g, const Element& low, const Element& high) {
  if (g.kind() != GroupKind::integer_lattice) throw PreconditionError("box windows need an integer lattice");
  if (low.size() != g.rank() || high.size() != g.rank()) throw PreconditionError("box corner has the wrong dimension");
  std::vector<Element> elems;
  for (std::size_t i = 0; i < low.size(); ++i)
    if (low[i] > high[i]) return of(g, {});
  Element cur = low;
  while (true) {
    elems.push_back(cur);
    std::size_t i = cur.size();
    while (i-- > 0) {
      if (++cur[i] <= high[i]) break;
      cur[i] = low[i];
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return of(g, std::move(elems));
}

GroupWindow GroupWindow::with_matrix(const GroupModel& g, std::vector<Element> elements, std::vector<Dist> matrix) {
  std::vector<std::string> labels;
  for (const auto& e : elements) labels.push_back(g.format(e));
  auto space = make_space(std::move(labels), std::move(matrix), Validation::skip);
  return GroupWindow(g, std::move(elements), std::move(space));
}

std::optional<PointId> GroupWindow::find(const Element& e) const {
  auto it = index_->find(e);
  if (it == index_->end()) return std::nullopt;
  return it->second;
}

PointId GroupWindow::point_of(const Element& e) const {
  auto p = find(e);
  if (!p) throw OutOfWindow("element " + group_.format(e) + " is outside the window");
  return *p;
}

PointSubset GroupWindow::subset(const std::vector<Element>& elems) const {
  PointSubset s(space_);
  for (const auto& e : elems) s.insert(point_of(e));
  return s;
}

std::vector<Element> GroupWindow::elements_of(const PointSubset& s) const {
  if (s.carrier() != space_) throw CarrierMismatch();
  std::vector<Element> out;
  for (auto p : s.points()) out.push_back(elements_[p]);
  return out;
}

// ---------------------------------------------------------------------------

namespace detail {

struct QuotientData {
  GroupModel parent;
  Subgroup normal;
  std::vector<Element> cosets;
  ElementMap<std::size_t> coset_of_key;
  std::optional<GroupModel> group;
  std::optional<GroupWindow> window;
  std::vector<std::int64_t> lengths;
};

}  // namespace detail

namespace {
constexpr std::size_t kQuotientCap = 2048;
}

QuotientModel::QuotientModel(const GroupModel& parent, const Subgroup& normal, std::int64_t check_radius) {
  if (!normal.parent().same_as(parent)) throw PreconditionError("subgroup belongs to a different group");
  if (!normal.has_finite_index()) throw PreconditionError("quotient by " + normal.describe() + " is infinite");
  if (normal.index() > kQuotientCap)
    throw CapExceeded("quotient of index " + std::to_string(normal.index()) + " exceeds the cap of " +
                      std::to_string(kQuotientCap));
  if (auto bad = normal.normality_violation(check_radius))
    throw PreconditionError("subgroup is not normal: conjugating " + parent.format(bad->second) + " by " +
                            parent.format(bad->first) + " leaves it");

  auto d = std::make_shared<detail::QuotientData>(detail::QuotientData{parent, normal, {}, {}, {}, {}, {}});
  if (const auto* lat = normal.lattice()) {
    d->cosets = lat->residues();
  } else {
    std::set<Element> keys;
    for (const auto& e : parent.elements()) keys.insert(normal.coset_key(e));
    d->cosets.assign(keys.begin(), keys.end());
  }
  for (std::size_t i = 0; i < d->cosets.size(); ++i) d->coset_of_key.emplace(d->cosets[i], i);

  const std::size_t n = d->cosets.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      table[a][b] = d->coset_of_key.at(normal.coset_key(parent.multiply(d->cosets[a], d->cosets[b])));
  std::vector<std::size_t> gens;
  for (const auto& g : parent.generators()) gens.push_back(d->coset_of_key.at(normal.coset_key(g)));
  std::vector<std::string> labels;
  for (const auto& c : d->cosets) labels.push_back("[" + parent.format(c) + "]");
  d->group = GroupModel::finite_table(std::move(table), std::move(gens), parent.name() + " / " + normal.describe(),
                                      std::move(labels));
  d->window = GroupWindow::whole(*d->group);
  for (const auto& e : d->group->elements()) d->lengths.push_back(d->group->word_length(e));
  data_ = std::move(d);
}

const GroupModel& QuotientModel::parent() const { return data_->parent; }
const Subgroup& QuotientModel::normal() const { return data_->normal; }
std::size_t QuotientModel::index() const { return data_->cosets.size(); }
const std::vector<Element>& QuotientModel::cosets() const { return data_->cosets; }
const GroupModel& QuotientModel::as_group() const { return *data_->group; }
const GroupWindow& QuotientModel::window() const { return *data_->window; }

Element QuotientModel::key(const Element& g) const { return data_->normal.coset_key(g); }

std::size_t QuotientModel::coset_index(const Element& g) const { return data_->coset_of_key.at(key(g)); }

std::int64_t QuotientModel::length(const Element& g) const { return data_->lengths[coset_index(g)]; }

Element QuotientModel::representative(const Element& g) const {
  const auto& parent = data_->parent;
  const auto target = key(g);
  // grow the parent ball until it meets the coset; ball(r) holds every element
  // of length < r, so the shortest member found there is globally shortest
  for (std::int64_t r = 1;; r *= 2) {
    if (!parent.is_finite() && parent.has_closed_form_length() && r > (std::int64_t{1} << 16))
      throw OutOfWindow("coset of " + parent.format(g) + " not met by any searched ball");
    const auto ball = parent.ball(r);
    std::optional<Element> best;
    std::int64_t best_len = 0;
    for (const auto& x : ball) {
      if (key(x) != target) continue;
      const auto len = parent.word_length(x);
      if (!best || len < best_len) {
        best = x;
        best_len = len;
      }
    }
    if (best) return *best;
    if (parent.is_finite() && ball.size() == parent.order())
      throw Error("coset search exhausted a finite group");
  }
}

std::int64_t QuotientModel::length_by_coset_minimum(const Element& g) const {
  return data_->parent.word_length(representative(g));
}

std::int64_t QuotientModel::diameter() const {
  return *std::max_element(data_->lengths.begin(), data_->lengths.end());
}

std::vector<std::size_t> QuotientModel::ball(std::int64_t radius) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < data_->lengths.size(); ++i)
    if (data_->lengths[i] < radius) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------

std::int64_t word_length(const GroupModel& g, const Element& e) { return g.word_length(e); }

std::int64_t quotient_length(const QuotientModel& q, const Element& e) { return q.length(e); }

std::vector<Element> group_ball(const GroupModel& g, std::int64_t radius) {
  if (radius <= 0) throw PreconditionError("ball radius must be positive");
  return g.ball(radius);
}

BallPushforwardVerdict check_ball_pushforward(const QuotientModel& q, std::int64_t radius) {
  BallPushforwardVerdict v;
  v.radius = radius;
  std::set<std::size_t> image;
  for (const auto& x : q.parent().ball(radius)) image.insert(q.coset_index(x));
  const auto qb = q.ball(radius);
  const std::set<std::size_t> quotient(qb.begin(), qb.end());
  std::set_difference(image.begin(), image.end(), quotient.begin(), quotient.end(), std::back_inserter(v.image_only));
  std::set_difference(quotient.begin(), quotient.end(), image.begin(), image.end(),
                      std::back_inserter(v.quotient_only));
  v.equal = v.image_only.empty() && v.quotient_only.empty();
  return v;
}

SpacePtr induced_space(const GroupModel& g, std::int64_t radius) {
  if (radius <= 0) throw PreconditionError("ball radius must be positive");
  return GroupWindow::ball(g, radius).space();
}

BornologousVerdict bornologous_check(const GroupModel& source, const GroupModel& target, const Homomorphism& phi,
                                     const std::function<std::int64_t(std::int64_t)>& rho_plus,
                                     std::int64_t r_max) {
  BornologousVerdict v;
  for (std::int64_t r = 1; r <= r_max; ++r) {
    const auto bound = rho_plus(r);
    for (const auto& x : source.ball(r)) {
      if (target.word_length(phi(x)) >= bound) {
        v.holds = false;
        v.radius = r;
        v.witness = x;
        return v;
      }
    }
  }
  v.radius = r_max;
  return v;
}

}  // namespace boxfdc
