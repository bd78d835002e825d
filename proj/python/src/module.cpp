#include <boxfdc/asdim.hpp>
#include <boxfdc/box_space.hpp>
#include <boxfdc/cli/commands.hpp>
#include <boxfdc/coarse_maps.hpp>
#include <boxfdc/decomposition.hpp>
#include <boxfdc/errors.hpp>
#include <boxfdc/finite_groups.hpp>
#include <boxfdc/game.hpp>
#include <boxfdc/group.hpp>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace boxfdc;

namespace {

using Pieces = std::vector<std::vector<Element>>;

PointSubset region_or_all(const GroupWindow& w, const std::optional<std::vector<Element>>& region) {
  return region ? w.subset(*region) : w.all();
}

Decomposition make_decomposition(const GroupWindow& w, const Pieces& color0, const Pieces& color1,
                                 const std::optional<std::vector<Element>>& region) {
  Decomposition d(region_or_all(w, region));
  for (const auto& p : color0) d.add(0, w.subset(p));
  for (const auto& p : color1) d.add(1, w.subset(p));
  return d;
}

Pieces pieces_of(const GroupWindow& w, const SubsetFamily& f) {
  Pieces out;
  for (const auto& p : f.pieces()) out.push_back(w.elements_of(p));
  return out;
}

Strategy strategy_named(const std::string& name, const py::kwargs& kw) {
  if (name == "interval") return strategy_interval_z();
  if (name == "no-split") return strategy_no_split();
  if (name == "coordinate-peel")
    return strategy_coordinate_peel(kw.contains("axes") ? kw["axes"].cast<std::vector<std::size_t>>()
                                                        : std::vector<std::size_t>{});
  if (name == "periodic-interval")
    return strategy_periodic_interval(kw["period"].cast<std::int64_t>(),
                                      kw.contains("chain_index") ? kw["chain_index"].cast<std::size_t>() : 1);
  throw PreconditionError("unknown strategy " + name);
}

py::dict transcript_summary(const GameTranscript& t) {
  py::dict d;
  d["won"] = t.won;
  d["won_round"] = t.won_round;
  d["outcome"] = t.outcome();
  d["rounds"] = t.rounds.size();
  d["initial_max_diameter"] = t.initial_max_diameter;
  std::vector<Dist> diam;
  for (const auto& p : t.final_family) diam.push_back(diameter(p));
  d["final_diameters"] = diam;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Box spaces, finite decomposition complexity and the decomposition game";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  py::class_<GroupModel>(m, "Group")
      .def_static("lattice", [](std::size_t rank, std::int64_t window_radius) {
        return GroupModel::integer_lattice(rank, window_radius);
      }, py::arg("rank"), py::arg("window_radius") = 64)
      .def_static("lattice_with", [](std::size_t rank, std::vector<Element> gens, std::int64_t window_radius) {
        return GroupModel::integer_lattice(rank, std::move(gens), window_radius);
      }, py::arg("rank"), py::arg("generators"), py::arg("window_radius") = 64)
      .def_static("permutation", [](std::size_t degree, std::vector<std::vector<std::size_t>> gens, std::string name) {
        return GroupModel::permutation_group(degree, std::move(gens), std::move(name));
      }, py::arg("degree"), py::arg("generators"), py::arg("name") = "")
      .def_static("cyclic", &cyclic_group)
      .def_static("dihedral", &dihedral_group)
      .def_static("dicyclic", &dicyclic_group)
      .def_static("symmetric", &symmetric_group)
      .def_static("alternating", &alternating_group)
      .def_property_readonly("name", &GroupModel::name)
      .def_property_readonly("rank", &GroupModel::rank)
      .def_property_readonly("is_finite", &GroupModel::is_finite)
      .def_property_readonly("order", &GroupModel::order)
      .def_property_readonly("generators", &GroupModel::generators)
      .def_property_readonly("identity", &GroupModel::identity)
      .def("elements", &GroupModel::elements)
      .def("multiply", &GroupModel::multiply)
      .def("invert", &GroupModel::invert)
      .def("word_length", &GroupModel::word_length)
      .def("distance", &GroupModel::distance)
      .def("ball", &GroupModel::ball)
      .def("format", &GroupModel::format)
      .def("__repr__", [](const GroupModel& g) { return "<Group " + g.name() + ">"; });

  m.def("small_groups", &small_groups, py::arg("max_order"));
  m.def("group_signature", &group_signature);

  py::class_<Subgroup>(m, "Subgroup")
      .def_static("lattice", [](const GroupModel& g, std::vector<Element> basis) { return Subgroup::lattice(g, std::move(basis)); })
      .def_static("generated_by", &Subgroup::generated_by)
      .def_static("from_elements", &Subgroup::from_elements)
      .def_static("trivial", &Subgroup::trivial)
      .def_static("whole", &Subgroup::whole)
      .def("contains", &Subgroup::contains)
      .def_property_readonly("index", &Subgroup::index)
      .def_property_readonly("is_finite", &Subgroup::is_finite)
      .def("elements", &Subgroup::elements)
      .def("__repr__", &Subgroup::describe);

  m.def("is_normal_in", &is_normal_in);
  m.def("all_subgroups", &all_subgroups, py::arg("group"), py::arg("cap") = 64);

  py::class_<GroupWindow>(m, "Window")
      .def_static("ball", &GroupWindow::ball)
      .def_static("whole", &GroupWindow::whole)
      .def_static("box", &GroupWindow::box)
      .def_static("of", &GroupWindow::of)
      .def_property_readonly("group", &GroupWindow::group)
      .def("__len__", &GroupWindow::size)
      .def("elements", &GroupWindow::elements)
      .def("distance", [](const GroupWindow& w, const Element& a, const Element& b) {
        return w.space()->dist(w.point_of(a), w.point_of(b));
      })
      .def("diameter", [](const GroupWindow& w) { return diameter(w.all()); })
      .def("metric_violation", [](const GroupWindow& w) -> std::optional<std::string> {
        auto v = w.space()->find_violation();
        if (!v) return std::nullopt;
        return v->describe();
      });

  py::class_<QuotientModel>(m, "Quotient")
      .def(py::init<GroupModel, Subgroup, std::int64_t>(), py::arg("group"), py::arg("normal"),
           py::arg("normality_radius") = 4)
      .def_property_readonly("index", &QuotientModel::index)
      .def("cosets", &QuotientModel::cosets)
      .def("coset_index", &QuotientModel::coset_index)
      .def("length", &QuotientModel::length)
      .def("length_by_coset_minimum", &QuotientModel::length_by_coset_minimum)
      .def("diameter", &QuotientModel::diameter)
      .def("ball", &QuotientModel::ball)
      .def("ball_pushforward_holds", [](const QuotientModel& q, std::int64_t r) {
        return static_cast<bool>(check_ball_pushforward(q, r));
      });

  py::class_<NormalChain>(m, "NormalChain")
      .def(py::init<GroupModel, std::vector<Subgroup>, std::int64_t>(), py::arg("group"), py::arg("subgroups"),
           py::arg("normality_radius") = 4)
      .def_static("powers", &NormalChain::powers, py::arg("lattice"), py::arg("base"), py::arg("depth"))
      .def("__len__", &NormalChain::size);

  m.def("injectivity_radius", &injectivity_radius, py::arg("chain"), py::arg("index"), py::arg("r_max"));
  m.def("minimal_injective_index", &minimal_injective_index);
  m.def("box_space", [](const NormalChain& chain, std::size_t k) {
    const auto b = build_box(chain, k);
    py::dict d;
    d["size"] = b.space->size();
    d["piece_sizes"] = b.piece_size;
    d["diameters"] = b.diameters;
    std::vector<std::vector<Dist>> cross(b.pieces(), std::vector<Dist>(b.pieces()));
    for (std::size_t i = 0; i < b.pieces(); ++i)
      for (std::size_t j = 0; j < b.pieces(); ++j) cross[i][j] = i == j ? 0 : b.cross_distance(i + 1, j + 1);
    d["cross_distances"] = cross;
    return d;
  }, py::arg("chain"), py::arg("pieces"));

  m.def("interval_decomposition", [](const GroupWindow& w, Dist R, std::optional<std::vector<Element>> region) {
    const auto d = interval_decomposition_z(w, region_or_all(w, region), R);
    return std::make_pair(pieces_of(w, d.color0()), pieces_of(w, d.color1()));
  }, py::arg("window"), py::arg("R"), py::arg("region") = py::none());

  m.def("verify_ordinary", [](const GroupWindow& w, const Pieces& c0, const Pieces& c1, Dist r,
                              std::optional<std::vector<Element>> region) {
    const auto v = verify_ordinary(make_decomposition(w, c0, c1, region), r);
    return std::make_pair(v.passed, v.describe());
  }, py::arg("window"), py::arg("color0"), py::arg("color1"), py::arg("r"), py::arg("region") = py::none());

  m.def("verify_full", [](const GroupWindow& w, const Pieces& c0, const Pieces& c1, Dist R,
                          std::optional<std::vector<Element>> region) {
    const auto v = verify_full(make_decomposition(w, c0, c1, region), R);
    py::dict d;
    d["passed"] = v.passed;
    d["lebesgue"] = v.lebesgue;
    d["unbounded"] = v.unbounded;
    d["detail"] = v.describe();
    return d;
  }, py::arg("window"), py::arg("color0"), py::arg("color1"), py::arg("R"), py::arg("region") = py::none());

  m.def("asdim_at_scale", [](const GroupWindow& w, Dist r, Dist B, bool exact,
                             std::optional<std::vector<Element>> region) {
    AsdimOptions opt;
    opt.exact = exact;
    const auto region_set = region_or_all(w, region);
    const auto res = asdim_at_scale(w.space(), region_set, r, B, opt);
    py::dict d;
    d["n"] = res.n;
    d["optimal"] = res.optimal;
    d["lower_bound"] = res.lower_bound;
    d["budget_exceeded"] = res.budget_exceeded;
    d["coloring"] = res.coloring;
    return d;
  }, py::arg("window"), py::arg("r"), py::arg("B"), py::arg("exact") = true, py::arg("region") = py::none());

  m.def("play", [](const GroupWindow& w, std::vector<Dist> challenge, const std::string& strategy, Dist B,
                   const py::kwargs& kw) {
    const auto t = play(w, {w.all()}, Challenge(std::move(challenge)), strategy_named(strategy, kw), B);
    return transcript_summary(t);
  }, py::arg("window"), py::arg("challenge"), py::arg("strategy"), py::arg("bound"));

  m.def("sfdc_check", [](const GroupWindow& w, std::vector<Dist> challenge, const std::string& strategy, Dist B,
                         const py::kwargs& kw) -> std::optional<std::size_t> {
    return sfdc_check(w, {w.all()}, Challenge(std::move(challenge)), strategy_named(strategy, kw), B).m;
  }, py::arg("window"), py::arg("challenge"), py::arg("strategy"), py::arg("bound"));

  m.def("associated_family", [](const GroupModel& g, std::size_t cap) {
    py::list out;
    for (const auto& s : associated_family(g, cap)) {
      py::dict d;
      d["order"] = s.order();
      d["upper_order"] = s.upper().elements().size();
      d["lower_order"] = s.lower().elements().size();
      d["description"] = s.describe();
      out.append(d);
    }
    return out;
  }, py::arg("group"), py::arg("cap") = 64);

  m.def("quotient_iso_failures", [](const GroupModel& g, std::size_t cap) {
    std::size_t checked = 0;
    std::vector<std::string> failures;
    for (const auto& t : admissible_triples(g, cap)) {
      const auto v = check_quotient_iso_metric(g, t.n0, {{t.upper, t.lower}});
      ++checked;
      if (!v.front().passed) failures.push_back(t.n0.describe() + ", " + t.lower.describe() + ", " +
                                                t.upper.describe() + ": " + v.front().reason);
    }
    return std::make_pair(checked, failures);
  }, py::arg("group"), py::arg("cap") = 64);

  m.def("command_names", &cli::command_names);
  m.def("_run_command", [](const std::string& name, const std::string& config_text, std::optional<std::int64_t> bound,
                           std::optional<std::uint64_t> seed, std::optional<std::string> input_path,
                           std::optional<std::string> cache_dir) {
    cli::CommandOptions opt;
    opt.config_path = "<python>";
    opt.config_text = config_text;
    opt.bound = bound;
    opt.seed = seed;
    opt.input_path = std::move(input_path);
    opt.cache_dir = std::move(cache_dir);
    py::gil_scoped_release release;
    auto r = cli::run_command(name, opt);
    return std::make_tuple(r.exit_code, r.report.dump(), r.timing.dump());
  }, py::arg("name"), py::arg("config_text"), py::arg("bound") = py::none(), py::arg("seed") = py::none(),
     py::arg("input_path") = py::none(), py::arg("cache_dir") = py::none());
}
