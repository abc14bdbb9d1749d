#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mvtop/models.hpp"

namespace mvtop::io {
namespace {

[[noreturn]] void schema(const std::string& what) { throw Error(ErrorKind::Schema, what); }

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object()) schema(where + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) schema(where + ": missing field \"" + name + "\"");
  return *it;
}

std::vector<std::string> label_list(const json& j, const std::string& where) {
  if (!j.is_array()) schema(where + ": expected an array of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema(where + "[" + std::to_string(i) + "]: expected a string label");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

std::vector<PointSet> values_from(const FiniteSpace& dom, const FiniteSpace& cod, const json& j,
                                  const std::string& where) {
  if (!j.is_object()) schema(where + ": expected an object keyed by domain label");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!dom.find(it.key())) throw Error(ErrorKind::UnknownLabel, where + "." + it.key() + " is not a domain point");
  std::vector<PointSet> values;
  for (int x = 0; x < dom.size(); ++x) {
    auto it = j.find(dom.label(x));
    if (it == j.end()) schema(where + ": no value for domain point " + dom.label(x));
    values.push_back(parse_pointset(cod, *it, where + "." + dom.label(x)));
  }
  return values;
}

}  // namespace

json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line, col = 1;
      else ++col;
    }
    schema(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

SpacePtr parse_space(const json& j) {
  if (j.is_string()) return share(models::build(j.get<std::string>()));
  auto labels = label_list(field(j, "points", "space"), "space.points");
  const json& mins = field(j, "min_open", "space");
  if (!mins.is_object()) schema("space.min_open: expected an object keyed by point label");
  std::vector<std::vector<std::string>> nbhd;
  for (const auto& l : labels) {
    auto it = mins.find(l);
    if (it == mins.end()) schema("space.min_open: no entry for point " + l);
    nbhd.push_back(label_list(*it, "space.min_open." + l));
  }
  for (auto it = mins.begin(); it != mins.end(); ++it)
    if (std::find(labels.begin(), labels.end(), it.key()) == labels.end())
      throw Error(ErrorKind::UnknownLabel, "space.min_open." + it.key() + " is not a declared point");
  return share(FiniteSpace::validate(std::move(labels), nbhd));
}

json space_to_json(const FiniteSpace& x) {
  json mins = json::object();
  for (int p = 0; p < x.size(); ++p) {
    json list = json::array();
    for (int q : x.min_open(p)) list.push_back(x.label(q));
    mins[x.label(p)] = std::move(list);
  }
  return json{{"points", x.labels()}, {"min_open", std::move(mins)}};
}

MultiMap parse_map(const json& j) {
  if (j.is_object() && j.contains("model")) {
    const json& name = field(j, "model", "map");
    if (!name.is_string()) schema("map.model: expected a string");
    return models::build_map(name.get<std::string>(), parse_space(field(j, "space", "map")));
  }
  SpacePtr dom = parse_space(field(j, "dom", "map"));
  SpacePtr cod = parse_space(field(j, "cod", "map"));
  return MultiMap(dom, cod, values_from(*dom, *cod, field(j, "values", "map"), "map.values"));
}

json values_to_json(const MultiMap& f) {
  json v = json::object();
  for (int x = 0; x < f.dom()->size(); ++x) v[f.dom()->label(x)] = pointset_to_json(*f.cod(), f(x));
  return v;
}

json map_to_json(const MultiMap& f) {
  return json{{"dom", space_to_json(*f.dom())}, {"cod", space_to_json(*f.cod())}, {"values", values_to_json(f)}};
}

PointSet parse_pointset(const FiniteSpace& x, const json& j, const std::string& where) {
  PointSet s;
  for (const auto& l : label_list(j, where)) {
    auto p = x.find(l);
    if (!p) throw Error(ErrorKind::UnknownLabel, where + ": unknown point " + l);
    s.insert(*p);
  }
  return s;
}

json pointset_to_json(const FiniteSpace& x, PointSet s) {
  json out = json::array();
  for (int p : s) out.push_back(x.label(p));
  return out;
}

json certificate_to_json(const std::vector<MultiMap>& chain) {
  json out = json::array();
  for (const auto& m : chain) out.push_back(values_to_json(m));
  return out;
}

json verdict_to_json(const HomotopyVerdict& v) {
  json out{{"status", std::string(to_string(v.status))}, {"explored", v.explored}, {"budget_hit", v.budget_hit}};
  if (v.status == HomotopyStatus::Homotopic) {
    out["certificate_length"] = v.certificate.size();
    out["certificate"] = certificate_to_json(v.certificate);
  }
  return out;
}

namespace {

json bound_to_json(const Bound& b) {
  if (b.kind == BoundKind::Finite) return b.value;
  return b.kind == BoundKind::Infinite ? "inf" : "unknown";
}

}  // namespace

json invariant_to_json(const InvariantResult& r, const FiniteSpace& space) {
  json cover = json::array();
  for (const auto& e : r.cover) {
    json entry{{"open", pointset_to_json(space, e.open)}};
    if (e.admission.section)
      entry["section"] = values_to_json(e.admission.section->delta);
    else
      entry["certificate"] = certificate_to_json(e.admission.chain);
    cover.push_back(std::move(entry));
  }
  return json{{"invariant", r.invariant},
              {"lower", bound_to_json(r.lower)},
              {"upper", bound_to_json(r.upper)},
              {"decided", r.decided},
              {"cover", std::move(cover)},
              {"unreachable", pointset_to_json(space, r.unreachable)},
              {"tests", r.tests},
              {"unknown_tests", r.unknown},
              {"explored", r.explored}};
}

json square_to_json(const CommutingSquare& sq) {
  return json{{"w", space_to_json(*sq.w)},
              {"k", sq.k},
              {"alpha", values_to_json(sq.alpha)},
              {"beta", values_to_json(sq.beta)}};
}

CommutingSquare parse_square(const MultiMap& rho, const json& j) {
  SpacePtr w = parse_space(field(j, "w", "square"));
  const json& kj = field(j, "k", "square");
  if (!kj.is_number_integer()) schema("square.k: expected an integer");
  const int k = kj.get<int>();
  SpacePtr cylinder = share(product(w, share(models::fence(k))));
  MultiMap alpha(w, rho.dom(), values_from(*w, *rho.dom(), field(j, "alpha", "square"), "square.alpha"));
  MultiMap beta(cylinder, rho.cod(), values_from(*cylinder, *rho.cod(), field(j, "beta", "square"), "square.beta"));
  return CommutingSquare{w, rho, std::move(alpha), k, std::move(beta)};
}

std::string digest(const json& j) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace mvtop::io
