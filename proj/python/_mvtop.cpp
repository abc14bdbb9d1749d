#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "io.hpp"
#include "mvtop/models.hpp"

namespace py = pybind11;
using namespace mvtop;
using io::json;

namespace {

// Results cross the boundary as JSON text; the Python layer decodes them.
std::string text(const json& j) { return j.dump(); }

SpacePtr space_from(const std::string& desc) { return io::parse_space(io::parse_text(desc, "space")); }
MultiMap map_from(const std::string& desc) { return io::parse_map(io::parse_text(desc, "map")); }

std::vector<std::string> labels_of(const FiniteSpace& x, PointSet s) {
  return io::pointset_to_json(x, s).get<std::vector<std::string>>();
}

PointSet points_of(const FiniteSpace& x, const std::vector<std::string>& labels) {
  return io::parse_pointset(x, json(labels), "points");
}

StepMode step_mode(const std::string& s) {
  if (s == "comparable") return StepMode::Comparable;
  if (s == "single-class") return StepMode::SingleClass;
  if (s == "core") return StepMode::Core;
  throw Error(ErrorKind::BadParams, "unknown step mode " + s);
}

SearchOptions search(std::uint64_t budget, const std::string& mode) {
  SearchOptions o;
  o.budget = budget;
  o.mode = step_mode(mode);
  return o;
}

InvariantOptions inv(std::uint64_t budget, const std::string& mode, int threads) {
  InvariantOptions o;
  o.budget = budget;
  o.mode = step_mode(mode);
  o.threads = threads;
  return o;
}

std::string invariant_text(const InvariantResult& r, const FiniteSpace& x) { return text(io::invariant_to_json(r, x)); }

}  // namespace

PYBIND11_MODULE(_mvtop, m) {
  m.doc() = "Finite-space multi-valued maps, m-homotopy and invariants";

  py::register_exception<Error>(m, "MvtopError", PyExc_ValueError);

  m.def("space_json", [](const std::string& desc) { return text(io::space_to_json(*space_from(desc))); },
        "Normalise a space desc (model recipe or JSON table) to its JSON table.");
  m.def("open_sets", [](const std::string& desc) {
    auto x = space_from(desc);
    std::vector<std::vector<std::string>> out;
    for (PointSet c : x->open_sets()) out.push_back(labels_of(*x, c));
    return out;
  });
  m.def("is_open", [](const std::string& desc, const std::vector<std::string>& a) {
    auto x = space_from(desc);
    return x->is_open(points_of(*x, a));
  });
  m.def("closure", [](const std::string& desc, const std::vector<std::string>& a) {
    auto x = space_from(desc);
    return labels_of(*x, x->closure(points_of(*x, a)));
  });
  m.def("is_pathwise_connected", [](const std::string& desc) { return is_m_pathwise_connected(*space_from(desc)); });

  m.def("map_json", [](const std::string& desc) { return text(io::map_to_json(map_from(desc))); });
  m.def("semicontinuity", [](const std::string& desc) {
    auto s = semicontinuity(map_from(desc));
    return text(json{{"usc", s.usc}, {"lsc", s.lsc}, {"m_continuous", s.m_continuous}});
  });
  m.def("classify", [](const std::string& desc) {
    auto c = classify(map_from(desc));
    return text(json{{"injective", c.injective}, {"surjective", c.surjective}, {"m_homeomorphism", c.m_homeomorphism}});
  });
  m.def("one_step", [](const std::string& f, const std::string& g) { return one_step(map_from(f), map_from(g)); });

  m.def("homotopy", [](const std::string& f, const std::string& g, std::uint64_t budget, const std::string& mode) {
    return text(io::verdict_to_json(are_m_homotopic(map_from(f), map_from(g), search(budget, mode))));
  });
  m.def("null_homotopy", [](const std::string& f, std::uint64_t budget, const std::string& mode) {
    return text(io::verdict_to_json(is_null_m_homotopic(map_from(f), search(budget, mode))));
  });
  m.def("contractible", [](const std::string& x, std::uint64_t budget, const std::string& mode) {
    return text(io::verdict_to_json(is_m_contractible(space_from(x), search(budget, mode))));
  });

  m.def("catm", [](const std::string& x, std::uint64_t budget, const std::string& mode, int threads) {
    auto s = space_from(x);
    return invariant_text(catm_space(s, inv(budget, mode, threads)), *s);
  });
  m.def("tmc", [](const std::string& x, std::uint64_t budget, const std::string& mode, int threads) {
    auto s = space_from(x);
    return invariant_text(tmc_space(s, inv(budget, mode, threads)), product(s, s));
  });
  m.def("dm", [](const std::string& f, const std::string& g, std::uint64_t budget, const std::string& mode,
                 int threads) {
    auto a = map_from(f);
    return invariant_text(homotopic_distance(a, map_from(g), inv(budget, mode, threads)), *a.dom());
  });
  m.def("catm_map", [](const std::string& f, std::uint64_t budget, const std::string& mode, int threads) {
    auto a = map_from(f);
    return invariant_text(catm_map(a, inv(budget, mode, threads)), *a.dom());
  });
  m.def("tmc_map", [](const std::string& f, const std::string& codomain, std::uint64_t budget,
                      const std::string& mode, int threads) {
    auto a = map_from(f);
    TmcMapMode cm = codomain == "literal" ? TmcMapMode::Literal : TmcMapMode::Paired;
    if (codomain != "literal" && codomain != "paired") throw Error(ErrorKind::BadParams, "unknown mode " + codomain);
    return invariant_text(tmc_map(a, cm, inv(budget, mode, threads)), product(a.dom(), a.dom()));
  });
  m.def("msecat", [](const std::string& f, std::uint64_t budget, const std::string& mode, int threads) {
    auto a = map_from(f);
    return invariant_text(msecat(a, inv(budget, mode, threads)), *a.cod());
  });
  m.def("fibration_certificate",
        [](const std::string& f) { return std::string(to_string(fibration_certificate(map_from(f)))); });

  m.def("catalog", [] { return models::catalog(); });
  m.attr("default_budget") = kDefaultBudget;
}
