#include <boxfdc/metric.hpp>

#include <algorithm>
#include <limits>
#include <sstream>

namespace boxfdc {

Dist ExtendedDistance::value() const {
  if (!finite_) throw Error("value() called on an infinite distance");
  return value_;
}

std::string ExtendedDistance::str() const { return finite_ ? std::to_string(value_) : "inf"; }

std::string MetricViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::identity:
      os << "identity axiom fails at (" << p << ", " << q << ")";
      break;
    case Kind::symmetry:
      os << "symmetry fails at (" << p << ", " << q << ")";
      break;
    case Kind::triangle:
      os << "triangle inequality fails for (" << p << ", " << q << ", " << r << ")";
      break;
  }
  return os.str();
}

MetricAxiomError::MetricAxiomError(MetricViolation v)
    : Error("metric axiom violated: " + v.describe()), witness_(v) {}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, DistanceFn fn)
    : labels_(std::move(labels)), fn_(std::move(fn)) {}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels, std::vector<Dist> matrix)
    : labels_(std::move(labels)) {
  if (matrix.size() != labels_.size() * labels_.size())
    throw PreconditionError("distance matrix has the wrong size");
  matrix_ = std::move(matrix);
  std::call_once(filled_, [] {});
}

std::span<const Dist> FiniteMetricSpace::matrix() const {
  std::call_once(filled_, [this] {
    const std::size_t n = size();
    matrix_.assign(n * n, 0);
    for (PointId p = 0; p < n; ++p)
      for (PointId q = 0; q < n; ++q) matrix_[p * n + q] = fn_(p, q);
  });
  return matrix_;
}

std::optional<MetricViolation> FiniteMetricSpace::find_violation() const {
  using Kind = MetricViolation::Kind;
  const std::size_t n = size();
  const Dist* d = matrix().data();
  for (PointId p = 0; p < n; ++p) {
    if (d[p * n + p] != 0) return MetricViolation{Kind::identity, p, p, 0};
    for (PointId q = p + 1; q < n; ++q) {
      if (d[p * n + q] != d[q * n + p]) return MetricViolation{Kind::symmetry, p, q, 0};
      if (d[p * n + q] == 0) return MetricViolation{Kind::identity, p, q, 0};
    }
  }
  // d(p,r) <= d(p,q) + d(q,r); symmetric in p and r, so r > p suffices.
  for (PointId p = 0; p < n; ++p) {
    const Dist* rp = d + p * n;
    for (PointId q = 0; q < n; ++q) {
      const Dist* rq = d + q * n;
      const Dist c = rp[q];
      unsigned bad = 0;
      for (PointId r = p + 1; r < n; ++r) bad |= static_cast<unsigned>(rp[r] > c + rq[r]);
      if (bad) {
        for (PointId r = p + 1; r < n; ++r)
          if (rp[r] > c + rq[r]) return MetricViolation{Kind::triangle, p, q, r};
      }
    }
  }
  return std::nullopt;
}

namespace {
SpacePtr validated(std::shared_ptr<FiniteMetricSpace> s, Validation v) {
  if (v == Validation::check) {
    if (auto bad = s->find_violation()) throw MetricAxiomError(*bad);
  }
  return s;
}
}  // namespace

SpacePtr make_space(std::vector<std::string> labels, FiniteMetricSpace::DistanceFn fn, Validation v) {
  return validated(std::make_shared<FiniteMetricSpace>(std::move(labels), std::move(fn)), v);
}

SpacePtr make_space(std::vector<std::string> labels, std::vector<Dist> matrix, Validation v) {
  return validated(std::make_shared<FiniteMetricSpace>(std::move(labels), std::move(matrix)), v);
}

// ---------------------------------------------------------------------------

PointSubset::PointSubset(SpacePtr carrier)
    : carrier_(std::move(carrier)), members_(carrier_->size()) {}

PointSubset::PointSubset(SpacePtr carrier, boost::dynamic_bitset<> members)
    : carrier_(std::move(carrier)), members_(std::move(members)) {
  if (members_.size() != carrier_->size()) throw PreconditionError("member bitset does not match carrier size");
}

PointSubset::PointSubset(SpacePtr carrier, std::span<const PointId> points)
    : carrier_(std::move(carrier)), members_(carrier_->size()) {
  for (PointId p : points) {
    if (p >= members_.size()) throw PreconditionError("point index outside the carrier");
    members_.set(p);
  }
}

PointSubset PointSubset::all(SpacePtr carrier) {
  PointSubset s(std::move(carrier));
  s.members_.set();
  return s;
}

std::vector<PointId> PointSubset::points() const {
  std::vector<PointId> out;
  out.reserve(members_.count());
  for (auto p = members_.find_first(); p != boost::dynamic_bitset<>::npos; p = members_.find_next(p))
    out.push_back(p);
  return out;
}

std::optional<PointId> PointSubset::first() const {
  auto p = members_.find_first();
  if (p == boost::dynamic_bitset<>::npos) return std::nullopt;
  return p;
}

void PointSubset::require_same(const PointSubset& other) const {
  if (carrier_ != other.carrier_) throw CarrierMismatch();
}

bool PointSubset::is_subset_of(const PointSubset& other) const {
  require_same(other);
  return members_.is_subset_of(other.members_);
}

bool PointSubset::intersects(const PointSubset& other) const {
  require_same(other);
  return members_.intersects(other.members_);
}

PointSubset PointSubset::operator|(const PointSubset& other) const {
  require_same(other);
  return PointSubset(carrier_, members_ | other.members_);
}

PointSubset PointSubset::operator&(const PointSubset& other) const {
  require_same(other);
  return PointSubset(carrier_, members_ & other.members_);
}

PointSubset PointSubset::operator-(const PointSubset& other) const {
  require_same(other);
  return PointSubset(carrier_, members_ - other.members_);
}

PointSubset PointSubset::complement() const { return PointSubset(carrier_, ~members_); }

std::string PointSubset::str() const {
  std::ostringstream os;
  os << '{';
  bool first_item = true;
  for (PointId p : points()) {
    if (!first_item) os << ", ";
    os << carrier_->label(p);
    first_item = false;
  }
  os << '}';
  return os.str();
}

SubsetFamily::SubsetFamily(SpacePtr carrier, std::vector<PointSubset> pieces) : carrier_(std::move(carrier)) {
  for (auto& p : pieces) add(std::move(p));
}

void SubsetFamily::add(PointSubset piece) {
  if (piece.carrier() != carrier_) throw CarrierMismatch();
  pieces_.push_back(std::move(piece));
}

PointSubset SubsetFamily::union_of() const {
  PointSubset u(carrier_);
  for (const auto& p : pieces_) u = u | p;
  return u;
}

// ---------------------------------------------------------------------------

Dist diameter(const PointSubset& s) {
  const auto pts = s.points();
  const auto& space = s.space();
  Dist best = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto row = space.row(pts[i]);
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::max(best, row[pts[j]]);
  }
  return best;
}

ExtendedDistance set_distance(const PointSubset& a, const PointSubset& b) {
  if (a.carrier() != b.carrier()) throw CarrierMismatch();
  if (a.empty() || b.empty()) return ExtendedDistance::infinity();
  if (a.intersects(b)) return 0;
  const auto pb = b.points();
  Dist best = std::numeric_limits<Dist>::max();
  for (PointId x : a.points()) {
    auto row = a.space().row(x);
    for (PointId y : pb) best = std::min(best, row[y]);
  }
  return best;
}

ExtendedDistance distance_to(PointId x, const PointSubset& s) {
  if (s.empty()) return ExtendedDistance::infinity();
  auto row = s.space().row(x);
  Dist best = std::numeric_limits<Dist>::max();
  for (PointId y : s.points()) best = std::min(best, row[y]);
  return best;
}

DisjointnessVerdict is_r_disjoint(const SubsetFamily& family, Dist r) {
  const auto& pieces = family.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (pieces[i] == pieces[j]) continue;
      auto d = set_distance(pieces[i], pieces[j]);
      if (d < ExtendedDistance(r)) return {false, DisjointnessWitness{i, j, d.value()}};
    }
  }
  return {};
}

PointSubset open_ball(const SpacePtr& space, PointId center, Dist radius) {
  if (center >= space->size()) throw PreconditionError("ball center outside the carrier");
  PointSubset ball(space);
  auto row = space->row(center);
  for (PointId p = 0; p < space->size(); ++p)
    if (row[p] < radius) ball.insert(p);
  return ball;
}

PointSubset outer_neighborhood(const PointSubset& s, Dist radius) {
  return outer_neighborhood(s, radius, PointSubset::all(s.carrier()));
}

PointSubset outer_neighborhood(const PointSubset& s, Dist radius, const PointSubset& within) {
  if (s.carrier() != within.carrier()) throw CarrierMismatch();
  if (s.empty()) return s;
  const auto members = s.points();
  const auto& space = s.space();
  PointSubset out(s.carrier());
  for (PointId x : within.points()) {
    if (s.contains(x)) {
      if (radius > 0) out.insert(x);
      continue;
    }
    auto row = space.row(x);
    for (PointId y : members) {
      if (row[y] < radius) {
        out.insert(x);
        break;
      }
    }
  }
  return out;
}

PointSubset inner_neighborhood(const PointSubset& s, Dist radius) {
  return inner_neighborhood(s, radius, PointSubset::all(s.carrier()));
}

PointSubset inner_neighborhood(const PointSubset& s, Dist radius, const PointSubset& within) {
  if (s.carrier() != within.carrier()) throw CarrierMismatch();
  const auto outside = (within - s).points();
  const auto& space = s.space();
  PointSubset out(s.carrier());
  for (PointId x : (s & within).points()) {
    auto row = space.row(x);
    bool keep = true;
    for (PointId y : outside) {
      if (row[y] < radius) {
        keep = false;
        break;
      }
    }
    if (keep) out.insert(x);
  }
  return out;
}

Dist lebesgue_number(const SubsetFamily& cover, const PointSubset& region) {
  if (cover.carrier() != region.carrier()) throw CarrierMismatch();
  const auto& space = region.space();
  const Dist cap = diameter(region) + 1;
  std::vector<std::vector<PointId>> outside;  // region \ piece, per piece
  outside.reserve(cover.size());
  for (const auto& piece : cover.pieces()) outside.push_back((region - piece).points());

  Dist result = cap;
  for (PointId x : region.points()) {
    auto row = space.row(x);
    Dist best_here = 0;
    bool covered = false;
    for (std::size_t i = 0; i < cover.size(); ++i) {
      if (!cover[i].contains(x)) continue;
      covered = true;
      Dist reach = cap;  // d(x, region \ piece), capped
      for (PointId y : outside[i]) reach = std::min(reach, row[y]);
      best_here = std::max(best_here, reach);
      if (best_here >= result) break;
    }
    if (!covered) throw NotACover("point " + space.label(x) + " lies in no piece of the cover");
    result = std::min(result, best_here);
  }
  return result;
}

}  // namespace boxfdc
