#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "io.hpp"
#include "mvtop/models.hpp"

#ifndef MVTOP_VERSION
#define MVTOP_VERSION "0.0.0"
#endif

using namespace mvtop;
using io::json;

namespace {

enum Exit { kHolds = 0, kFails = 1, kInputError = 2, kUnknown = 3 };

struct Common {
  std::uint64_t budget = kDefaultBudget;
  int threads = 1;
  bool pretty = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--budget", c.budget, "search budget (maps or assignments visited per search)");
  cmd->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1, 256));
  cmd->add_flag("--pretty", c.pretty, "indented output");
  cmd->add_flag("--json", "compact JSON output (the default)");
}

// A file path, a model recipe, or NAME@MODEL for a catalogue map.
json load(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return io::read_file(arg);
  if (auto at = arg.find('@'); at != std::string::npos)
    return json{{"model", arg.substr(0, at)}, {"space", arg.substr(at + 1)}};
  return json(arg);
}

void print(const json& j, bool pretty) { std::cout << j.dump(pretty ? 2 : -1) << "\n"; }

json report(const std::string& command, const json& inputs, json result, json budget) {
  return json{{"command", command},
              {"inputs", io::digest(inputs)},
              {"result", std::move(result)},
              {"budget", std::move(budget)},
              {"version", MVTOP_VERSION}};
}

int exit_for(HomotopyStatus s) {
  switch (s) {
    case HomotopyStatus::Homotopic: return kHolds;
    case HomotopyStatus::NotHomotopic: return kFails;
    case HomotopyStatus::Unknown: return kUnknown;
  }
  return kUnknown;
}

StepMode parse_mode(const std::string& s) {
  if (s == "comparable") return StepMode::Comparable;
  if (s == "single-class") return StepMode::SingleClass;
  if (s == "core") return StepMode::Core;
  throw Error(ErrorKind::BadParams, "unknown step mode " + s);
}

json space_inputs(const SpacePtr& x) { return io::space_to_json(*x); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mvtop: multi-valued maps, homotopy and invariants on finite spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MVTOP_VERSION);

  Common common;
  if (const char* env = std::getenv("MVTOP_BUDGET")) {
    try {
      common.budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "MVTOP_BUDGET is not a number\n";
      return kInputError;
    }
  }

  // check
  auto* check = app.add_subcommand("check", "decide a single property");
  std::string what;
  std::vector<std::string> check_inputs;
  check->add_option("what", what, "space | continuity | section | homeomorphism | connected")
      ->required()
      ->check(CLI::IsMember({"space", "continuity", "section", "homeomorphism", "connected"}));
  check->add_option("inputs", check_inputs, "space or map files / model names")->required();
  add_common(check, common);

  // homotopy
  auto* homotopy = app.add_subcommand("homotopy", "decide m-homotopy, null-homotopy or contractibility");
  std::string hf, hg, hnull, hcontract, hmode = "comparable", emit_path;
  bool singleton_constants = false;
  homotopy->add_option("--f", hf, "first map");
  homotopy->add_option("--g", hg, "second map");
  homotopy->add_option("--null", hnull, "map to test for null-homotopy");
  homotopy->add_option("--contractible", hcontract, "space to test for contractibility");
  homotopy->add_option("--mode", hmode, "comparable | single-class | core")
      ->check(CLI::IsMember({"comparable", "single-class", "core"}));
  homotopy->add_option("--emit-certificate", emit_path, "write the certificate chain here");
  homotopy->add_flag("--singleton-constants", singleton_constants, "only one-point constants count");
  add_common(homotopy, common);

  // invariant
  auto* invariant = app.add_subcommand("invariant", "compute D^m, catm, tmc or msecat");
  std::string kind, ispace, imap, iff, igg, tmc_mode = "paired", istep = "core";
  invariant->add_option("kind", kind, "dm | catm | catm-map | tmc | tmc-map | msecat")
      ->required()
      ->check(CLI::IsMember({"dm", "catm", "catm-map", "tmc", "tmc-map", "msecat"}));
  invariant->add_option("--space", ispace, "space (catm, tmc)");
  invariant->add_option("--map", imap, "map (catm-map, tmc-map, msecat)");
  invariant->add_option("--f", iff, "first map (dm)");
  invariant->add_option("--g", igg, "second map (dm)");
  invariant->add_option("--mode", tmc_mode, "tmc-map codomain handling: paired | literal")
      ->check(CLI::IsMember({"paired", "literal"}));
  invariant->add_option("--step-mode", istep, "homotopy engine: core | single-class | comparable")
      ->check(CLI::IsMember({"comparable", "single-class", "core"}));
  invariant->add_flag("--singleton-constants", singleton_constants, "only one-point constants count");
  add_common(invariant, common);

  // fibration
  auto* fibration = app.add_subcommand("fibration", "lifting squares and certificates");
  fibration->require_subcommand(1);
  auto* fcert = fibration->add_subcommand("certificate", "structural fibration certificate");
  std::string fmap, suite_path;
  int generate = 0, w_max = 3, k_max = 2;
  std::uint64_t seed = 1;
  fcert->add_option("--map", fmap, "the map rho")->required();
  add_common(fcert, common);
  auto* fcheck = fibration->add_subcommand("check", "search fillers for a square suite");
  fcheck->add_option("--map", fmap, "the map rho (overrides the suite's)");
  fcheck->add_option("--suite", suite_path, "suite file {\"rho\": map, \"squares\": [...]}");
  fcheck->add_option("--generate", generate, "generate this many random valid squares");
  fcheck->add_option("--seed", seed, "generator seed");
  fcheck->add_option("--w-max", w_max, "largest random W")->check(CLI::Range(1, 7));
  fcheck->add_option("--k-max", k_max, "longest fence")->check(CLI::Range(0, 8));
  add_common(fcheck, common);

  // models
  auto* models_cmd = app.add_subcommand("models", "catalogue of standard spaces");
  models_cmd->require_subcommand(1);
  auto* mlist = models_cmd->add_subcommand("list", "print the catalogue");
  auto* memit = models_cmd->add_subcommand("emit", "print a model as a space file");
  std::string model_name;
  memit->add_option("name", model_name, "model recipe or space file")->required();
  add_common(mlist, common);
  add_common(memit, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  const json budget_in{{"limit", common.budget}};
  std::string command;
  try {
    // ------------------------------------------------------------ check
    if (*check) {
      command = "check " + what;
      auto need = [&](std::size_t n) {
        if (check_inputs.size() != n)
          throw Error(ErrorKind::BadParams, command + " takes " + std::to_string(n) + " input(s)");
      };
      json result;
      json inputs;
      bool holds = false;
      if (what == "space" || what == "connected") {
        need(1);
        SpacePtr x = io::parse_space(load(check_inputs[0]));
        inputs = space_inputs(x);
        if (what == "space") {
          holds = true;
          result = {{"points", x->size()}, {"t0", x->is_t0()}};
        } else {
          auto pair = disconnected_closed_pair(*x);
          holds = !pair;
          result = json::object();
          if (pair)
            result["witness"] = {io::pointset_to_json(*x, pair->first), io::pointset_to_json(*x, pair->second)};
        }
      } else if (what == "continuity" || what == "homeomorphism") {
        need(1);
        MultiMap f = io::parse_map(load(check_inputs[0]));
        inputs = io::map_to_json(f);
        if (what == "continuity") {
          auto s = semicontinuity(f);
          holds = s.m_continuous;
          result = {{"usc", s.usc}, {"lsc", s.lsc}, {"m_continuous", s.m_continuous}};
        } else {
          auto c = classify(f);
          holds = c.m_homeomorphism;
          result = {{"injective", c.injective}, {"surjective", c.surjective}, {"m_homeomorphism", c.m_homeomorphism}};
          if (c.inverse) result["inverse"] = io::map_to_json(*c.inverse);
        }
      } else {
        need(2);
        MultiMap a = io::parse_map(load(check_inputs[0]));
        MultiMap b = io::parse_map(load(check_inputs[1]));
        inputs = {io::map_to_json(a), io::map_to_json(b)};
        holds = is_m_section_pair(a, b);
        result = json::object();
      }
      result["holds"] = holds;
      print(report(command, inputs, result, budget_in), common.pretty);
      return holds ? kHolds : kFails;
    }

    // ------------------------------------------------------------ homotopy
    if (*homotopy) {
      SearchOptions opt;
      opt.budget = common.budget;
      opt.threads = common.threads;
      opt.mode = parse_mode(hmode);
      opt.singleton_constants = singleton_constants;
      HomotopyVerdict v;
      json inputs;
      std::optional<MultiMap> f;
      if (!hcontract.empty()) {
        command = "homotopy --contractible";
        SpacePtr x = io::parse_space(load(hcontract));
        inputs = space_inputs(x);
        v = is_m_contractible(x, opt);
        f = identity_map(x);
      } else if (!hnull.empty()) {
        command = "homotopy --null";
        f = io::parse_map(load(hnull));
        inputs = io::map_to_json(*f);
        v = is_null_m_homotopic(*f, opt);
      } else {
        if (hf.empty() || hg.empty()) throw Error(ErrorKind::BadParams, "need --f and --g, --null, or --contractible");
        command = "homotopy";
        f = io::parse_map(load(hf));
        MultiMap g = io::parse_map(load(hg));
        inputs = {io::map_to_json(*f), io::map_to_json(g)};
        v = are_m_homotopic(*f, g, opt);
      }
      inputs = {inputs, to_string(opt.mode), opt.singleton_constants};
      json result = io::verdict_to_json(v);
      result["mode"] = to_string(opt.mode);
      if (!emit_path.empty() && v.status == HomotopyStatus::Homotopic) {
        json cert{{"dom", io::space_to_json(*f->dom())},
                  {"cod", io::space_to_json(*f->cod())},
                  {"chain", io::certificate_to_json(v.certificate)},
                  {"fence_length", v.certificate.size() - 1}};
        std::ofstream out(emit_path);
        if (!out) throw Error(ErrorKind::Schema, emit_path + ": cannot write");
        out << cert.dump(2) << "\n";
        result["certificate_file"] = emit_path;
      }
      print(report(command, inputs, result, {{"limit", common.budget}, {"explored", v.explored}}), common.pretty);
      return exit_for(v.status);
    }

    // ------------------------------------------------------------ invariant
    if (*invariant) {
      command = "invariant " + kind;
      InvariantOptions opt;
      opt.budget = common.budget;
      opt.threads = common.threads;
      opt.mode = parse_mode(istep);
      opt.singleton_constants = singleton_constants;
      auto need = [&](const std::string& v, const char* flag) {
        if (v.empty()) throw Error(ErrorKind::BadParams, command + " needs " + flag);
        return load(v);
      };
      InvariantResult r;
      SpacePtr space;
      json inputs, extra = json::object();
      if (kind == "dm") {
        MultiMap a = io::parse_map(need(iff, "--f"));
        MultiMap b = io::parse_map(need(igg, "--g"));
        inputs = {io::map_to_json(a), io::map_to_json(b)};
        r = homotopic_distance(a, b, opt);
        space = a.dom();
      } else if (kind == "catm" || kind == "tmc") {
        SpacePtr x = io::parse_space(need(ispace, "--space"));
        inputs = space_inputs(x);
        if (kind == "catm") {
          r = catm_space(x, opt);
          space = x;
        } else {
          auto p = tmc_space_problem(x, opt);
          r = solve(p, opt);
          space = p.space;
        }
      } else {
        MultiMap a = io::parse_map(need(imap, "--map"));
        inputs = io::map_to_json(a);
        if (kind == "catm-map") {
          r = catm_map(a, opt);
          space = a.dom();
        } else if (kind == "msecat") {
          r = msecat(a, opt);
          space = a.cod();
        } else {
          TmcMapMode mode = tmc_mode == "literal" ? TmcMapMode::Literal : TmcMapMode::Paired;
          auto p = tmc_map_problem(a, mode, opt);
          r = solve(p, opt);
          space = p.space;
          extra["mode"] = to_string(mode);
          extra["fibration_certificate"] = to_string(fibration_certificate(a));
        }
      }
      inputs = {inputs, tmc_mode, istep, opt.singleton_constants};
      json result = io::invariant_to_json(r, *space);
      for (auto it = extra.begin(); it != extra.end(); ++it) result[it.key()] = *it;
      print(report(command, inputs, result,
                   {{"limit_per_test", common.budget}, {"explored", r.explored}, {"unknown_tests", r.unknown}}),
            common.pretty);
      return r.decided ? kHolds : kUnknown;
    }

    // ------------------------------------------------------------ fibration
    if (*fcert) {
      command = "fibration certificate";
      MultiMap rho = io::parse_map(load(fmap));
      auto c = fibration_certificate(rho);
      json result{{"certificate", to_string(c)}};
      if (c == FibrationCertificate::None) result["note"] = "not recognised; this does not show rho fails to lift";
      if (c == FibrationCertificate::Constant)
        result["note"] = "fillers exist only for squares whose beta stays at the constant value";
      print(report(command, io::map_to_json(rho), result, budget_in), common.pretty);
      return c == FibrationCertificate::None ? kUnknown : kHolds;
    }
    if (*fcheck) {
      command = "fibration check";
      json suite = suite_path.empty() ? json::object() : io::read_file(suite_path);
      std::optional<MultiMap> rho;
      if (!fmap.empty())
        rho = io::parse_map(load(fmap));
      else if (suite.contains("rho"))
        rho = io::parse_map(suite["rho"]);
      else
        throw Error(ErrorKind::BadParams, "need --map or a suite with \"rho\"");
      std::vector<CommutingSquare> squares;
      if (suite.contains("squares")) {
        if (!suite["squares"].is_array()) throw Error(ErrorKind::Schema, "suite.squares: expected an array");
        for (const auto& s : suite["squares"]) squares.push_back(io::parse_square(*rho, s));
      }
      std::mt19937_64 rng(seed);
      for (int i = 0; i < generate; ++i) {
        const int wn = 1 + static_cast<int>(rng() % w_max);
        SpacePtr w = share(models::random_space(wn, rng()));
        const int k = static_cast<int>(rng() % (k_max + 1));
        squares.push_back(random_square(*rho, w, k, rng));
      }
      json rows = json::array();
      int found = 0, not_found = 0, unknown = 0;
      std::uint64_t explored = 0;
      for (const auto& sq : squares) {
        auto r = find_filler(sq, common.budget);
        explored += r.explored;
        json row{{"status", std::string(to_string(r.status))}, {"explored", r.explored},
                 {"beta_within_rho_image", beta_within_rho_image(sq)}};
        if (r.filler) row["filler"] = io::values_to_json(*r.filler);
        if (r.status == SearchStatus::Found) ++found;
        else if (r.status == SearchStatus::NotFound) ++not_found;
        else ++unknown;
        rows.push_back(std::move(row));
      }
      json sq_inputs = json::array();
      for (const auto& sq : squares) sq_inputs.push_back(io::square_to_json(sq));
      json result{{"certificate", to_string(fibration_certificate(*rho))},
                  {"squares", std::move(rows)},
                  {"found", found},
                  {"not_found", not_found},
                  {"unknown", unknown}};
      print(report(command, {io::map_to_json(*rho), sq_inputs}, result,
                   {{"limit", common.budget}, {"explored", explored}}),
            common.pretty);
      if (not_found > 0) return kFails;
      return unknown > 0 ? kUnknown : kHolds;
    }

    // ------------------------------------------------------------ models
    if (*mlist) {
      command = "models list";
      json rows = json::array();
      for (const auto& [name, desc] : models::catalog()) rows.push_back({{"name", name}, {"description", desc}});
      print(report(command, json::object(), {{"models", rows}}, budget_in), common.pretty);
      return kHolds;
    }
    if (*memit) {
      command = "models emit";
      print(io::space_to_json(*io::parse_space(load(model_name))), common.pretty);
      return kHolds;
    }
  } catch (const Error& e) {
    json err{{"kind", std::string(to_string(e.kind()))}, {"detail", e.detail()}};
    print(json{{"command", command}, {"error", err}, {"version", MVTOP_VERSION}}, common.pretty);
    return kInputError;
  }
  return kInputError;
}
