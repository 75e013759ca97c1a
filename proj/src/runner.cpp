#include "coarsegeo/runner.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <set>

#include "coarsegeo/axioms.hpp"
#include "coarsegeo/boundary.hpp"
#include "coarsegeo/builders.hpp"
#include "coarsegeo/equivalence.hpp"
#include "coarsegeo/functions.hpp"

namespace coarsegeo {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const std::set<std::string> kCommands = {
    "check-axioms", "delta",         "compare",
    "boundary-profile", "function-test", "fixtures"};

std::vector<double> ladder_at(const json& j, const std::string& key,
                              std::vector<double> fallback,
                              const std::string& path) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_array() || j.at(key).empty()) {
    throw SpecError(path + "." + key + ": expected a non-empty array");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) out.push_back(v.get<double>());
  return out;
}

std::string timestamp_utc() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& path) {
  if (!j.is_object()) throw SpecError(path + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) {
      throw SpecError(path + "." + key + ": unknown key");
    }
  }
}

std::string csv_of_envelope(const MonotoneEnvelope1D& e) {
  std::string out = "key,value\n";
  for (const auto& c : e.breakpoints()) {
    out += std::to_string(c.key) + "," + std::to_string(c.value) + "\n";
  }
  return out;
}

std::string csv_of_envelope(const MonotoneEnvelope2D& e) {
  std::string out = "s,t,value\n";
  for (const auto& c : e.breakpoints()) {
    out += std::to_string(c.s) + "," + std::to_string(c.t) + "," +
           std::to_string(c.value) + "\n";
  }
  return out;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  check_keys(doc,
             {"command", "space", "product", "products", "function",
              "sample", "ladders", "tolerances", "cp4_cap", "triple_budget",
              "bounds", "divergence", "sandwich", "sequences", "seed",
              "workers", "out", "csv", "force"},
             "config");
  RunConfig cfg;
  if (!doc.contains("command")) throw SpecError("config.command: missing");
  cfg.command = doc.at("command").get<std::string>();
  if (!kCommands.count(cfg.command)) {
    throw SpecError("config.command: unknown command '" + cfg.command + "'");
  }
  cfg.seed = doc.value("seed", 0ULL);
  cfg.workers = doc.value("workers", 0);
  cfg.out_dir = doc.value("out", std::string("reports"));
  cfg.csv = doc.value("csv", false);
  cfg.force = doc.value("force", false);

  if (doc.contains("space")) {
    cfg.space = doc.at("space");
    build_space(cfg.space);  // validate eagerly
  } else if (cfg.command != "fixtures") {
    throw SpecError("config.space: missing");
  }

  if (doc.contains("product") && doc.contains("products")) {
    throw SpecError("config.products: give either product or products");
  }
  if (doc.contains("product")) cfg.products.push_back(doc.at("product"));
  if (doc.contains("products")) {
    for (const auto& p : doc.at("products")) cfg.products.push_back(p);
  }
  if (doc.contains("function")) cfg.function = doc.at("function");

  if (doc.contains("sample")) {
    cfg.sample = parse_sample_spec(doc.at("sample"), "config.sample");
  }
  if (!doc.contains("sample") || !doc.at("sample").contains("seed")) {
    cfg.sample.seed = cfg.seed;
  }

  if (doc.contains("ladders")) {
    const auto& lad = doc.at("ladders");
    check_keys(lad,
               {"R", "Q", "B", "n", "radius", "keys", "truncation",
                "epsilon"},
               "config.ladders");
    cfg.r_ladder = ladder_at(lad, "R", cfg.r_ladder, "config.ladders");
    cfg.q_ladder = ladder_at(lad, "Q", cfg.q_ladder, "config.ladders");
    cfg.b_ladder = ladder_at(lad, "B", cfg.b_ladder, "config.ladders");
    cfg.n_ladder = ladder_at(lad, "n", cfg.n_ladder, "config.ladders");
    cfg.radius_ladder =
        ladder_at(lad, "radius", cfg.radius_ladder, "config.ladders");
    cfg.key_ladder = ladder_at(lad, "keys", cfg.key_ladder, "config.ladders");
    cfg.truncation_ladder =
        ladder_at(lad, "truncation", cfg.truncation_ladder, "config.ladders");
    cfg.epsilon_ladder =
        ladder_at(lad, "epsilon", cfg.epsilon_ladder, "config.ladders");
  }

  if (doc.contains("tolerances")) {
    const auto& tol = doc.at("tolerances");
    check_keys(tol, {"bound", "growth", "stabilize"}, "config.tolerances");
    cfg.bound_tolerance = tol.value("bound", cfg.bound_tolerance);
    cfg.growth_threshold = tol.value("growth", cfg.growth_threshold);
    cfg.stabilize_tol = tol.value("stabilize", cfg.stabilize_tol);
  }

  cfg.cp4_cap = doc.value("cp4_cap", 0.0);
  cfg.triple_budget = doc.value("triple_budget", cfg.triple_budget);

  if (doc.contains("bounds")) {
    for (std::size_t i = 0; i < doc.at("bounds").size(); ++i) {
      const auto& b = doc.at("bounds").at(i);
      std::string path = "config.bounds[" + std::to_string(i) + "]";
      check_keys(b, {"target", "name", "params"}, path);
      RunConfig::BoundSpec bs;
      bs.target = b.value("target", std::string());
      if (bs.target != "rho1" && bs.target != "rho2" && bs.target != "rho3") {
        throw SpecError(path + ".target: expected rho1 | rho2 | rho3");
      }
      bs.name = b.value("name", std::string());
      bs.params = b.contains("params") ? b.at("params") : json::object();
      make_bound_candidate(bs.name, bs.params);  // validate name eagerly
      cfg.bounds.push_back(std::move(bs));
    }
  }

  if (doc.contains("sandwich")) {
    const auto& s = doc.at("sandwich");
    check_keys(s, {"mode", "shift", "scale"}, "config.sandwich");
    RunConfig::SandwichSpec sw;
    sw.mode = s.value("mode", std::string("additive"));
    if (sw.mode != "additive" && sw.mode != "multiplicative") {
      throw SpecError("config.sandwich.mode: expected additive | "
                      "multiplicative");
    }
    sw.shift_or_scale = sw.mode == "additive" ? s.value("shift", 0.0)
                                              : s.value("scale", 1.0);
    cfg.sandwich = sw;
  }

  if (doc.contains("sequences")) {
    const auto& s = doc.at("sequences");
    check_keys(s, {"a", "b", "horizon"}, "config.sequences");
    RunConfig::SequenceSpec sq;
    for (const auto& v : s.at("a")) sq.a.push_back(v.get<std::string>());
    for (const auto& v : s.at("b")) sq.b.push_back(v.get<std::string>());
    sq.horizon = s.value("horizon", std::min(sq.a.size(), sq.b.size()));
    cfg.sequences = sq;
  }

  // Command-specific requirements surface now, not at run time.
  if (cfg.command == "check-axioms" || cfg.command == "boundary-profile" ||
      cfg.command == "function-test") {
    if (cfg.products.empty()) throw SpecError("config.product: missing");
  }
  if (cfg.command == "compare" && cfg.products.size() != 2) {
    throw SpecError("config.products: compare needs exactly two products");
  }
  if (cfg.command == "function-test" && !cfg.function.has_value()) {
    throw SpecError("config.function: missing");
  }
  if (doc.contains("divergence")) {
    const auto& d = doc.at("divergence");
    check_keys(d, {"target", "key", "growth_threshold"}, "config.divergence");
    RunConfig::DivergenceSpec dv;
    dv.target = d.value("target", std::string("rho3"));
    if (dv.target != "rho1" && dv.target != "rho2" && dv.target != "rho3") {
      throw SpecError("config.divergence.target: expected rho1|rho2|rho3");
    }
    if (!d.contains("key")) throw SpecError("config.divergence.key: missing");
    if (d.at("key").is_array()) {
      for (const auto& v : d.at("key")) dv.key.push_back(v.get<double>());
    } else {
      dv.key.push_back(d.at("key").get<double>());
    }
    std::size_t want = dv.target == "rho3" ? 2 : 1;
    if (dv.key.size() != want) {
      throw SpecError("config.divergence.key: wrong arity for " + dv.target);
    }
    dv.growth_threshold = d.value("growth_threshold", cfg.growth_threshold);
    cfg.divergence = dv;
  }

  // Validate products eagerly against the space.
  if (doc.contains("space")) {
    auto space = build_space(cfg.space);
    for (const auto& p : cfg.products) build_product(p, space);
    if (cfg.function.has_value()) build_function(*cfg.function, space);
  }
  return cfg;
}

nlohmann::ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["command"] = command;
  j["space"] = ordered_json(space);
  if (!products.empty()) {
    ordered_json ps = ordered_json::array();
    for (const auto& p : products) ps.push_back(ordered_json(p));
    j["products"] = ps;
  }
  if (function.has_value()) j["function"] = ordered_json(*function);
  j["sample"] = sample_spec_to_json(sample);
  j["ladders"] = {{"R", r_ladder},         {"Q", q_ladder},
                  {"B", b_ladder},         {"n", n_ladder},
                  {"radius", radius_ladder}, {"keys", key_ladder},
                  {"truncation", truncation_ladder},
                  {"epsilon", epsilon_ladder}};
  j["tolerances"] = {{"bound", bound_tolerance},
                     {"growth", growth_threshold},
                     {"stabilize", stabilize_tol}};
  j["cp4_cap"] = cp4_cap;
  j["triple_budget"] = triple_budget;
  if (!bounds.empty()) {
    ordered_json bs = ordered_json::array();
    for (const auto& b : bounds) {
      bs.push_back({{"target", b.target},
                    {"name", b.name},
                    {"params", ordered_json(b.params)}});
    }
    j["bounds"] = bs;
  }
  if (divergence.has_value()) {
    j["divergence"] = {{"target", divergence->target},
                       {"key", divergence->key},
                       {"growth_threshold", divergence->growth_threshold}};
  }
  if (sandwich.has_value()) {
    j["sandwich"] = {{"mode", sandwich->mode},
                     {sandwich->mode == "additive" ? "shift" : "scale",
                      sandwich->shift_or_scale}};
  }
  if (sequences.has_value()) {
    j["sequences"] = {{"a", sequences->a},
                      {"b", sequences->b},
                      {"horizon", sequences->horizon}};
  }
  j["seed"] = seed;
  j["workers"] = workers;
  j["out"] = out_dir;
  j["csv"] = csv;
  return j;
}

namespace {

struct CommandOutput {
  ordered_json result;
  int exit_code = 0;
  std::map<std::string, std::string> csvs;
};

CommandOutput run_check_axioms(const RunConfig& cfg) {
  auto space = build_space(cfg.space);
  auto product = build_product(cfg.products.at(0), space);
  auto pts = sample(product->space(), cfg.sample);

  ScanBudget budget{cfg.triple_budget, cfg.seed, cfg.workers};
  auto env = extract_cp_envelopes(*product, pts, budget);
  auto delta = product_delta(*product, pts, budget);

  CommandOutput out;
  out.result["envelopes"] = {{"rho1", envelope_to_json(env.rho1)},
                             {"rho2", envelope_to_json(env.rho2)},
                             {"rho3", envelope_to_json(env.rho3)}};
  out.result["census"] = env.census.to_json();
  out.result["delta"] = delta.delta;

  std::string cp1 = "satisfied-on-sample";
  std::string cp2 = "satisfied-on-sample";
  std::string cp3 = "satisfied-on-sample";

  // Optional truncation-ladder probe for envelope blow-up.
  if (cfg.divergence.has_value()) {
    const auto& dv = *cfg.divergence;
    std::vector<double> values;
    for (double T : cfg.truncation_ladder) {
      SampleSpec s = cfg.sample;
      s.r_out = std::min(cfg.sample.r_out, T);
      auto tpts = sample(product->space(), s);
      auto tenv = extract_cp_envelopes(*product, tpts, budget);
      if (dv.target == "rho3") {
        values.push_back(tenv.rho3.eval(dv.key[0], dv.key[1]));
      } else if (dv.target == "rho1") {
        values.push_back(tenv.rho1.eval(dv.key[0]));
      } else {
        values.push_back(tenv.rho2.eval(dv.key[0]));
      }
    }
    auto diag = divergence_diagnostic(values, dv.growth_threshold,
                                      cfg.stabilize_tol);
    out.result["divergence"] = {{"target", dv.target},
                                {"values", values},
                                {"diagnosis", to_string(diag)}};
    std::string verdict = diag == Divergence::kBounded
                              ? "satisfied-on-sample"
                              : (diag == Divergence::kDiverging
                                     ? "envelope-blowup"
                                     : "inconclusive");
    if (dv.target == "rho1") cp1 = verdict;
    if (dv.target == "rho2") cp2 = verdict;
    if (dv.target == "rho3") cp3 = verdict;
    if (diag == Divergence::kDiverging) out.exit_code = 2;
  }

  ordered_json bounds = ordered_json::array();
  for (const auto& bs : cfg.bounds) {
    auto cand = make_bound_candidate(bs.name, bs.params);
    BoundVerdict v;
    if (bs.target == "rho1") {
      v = bound_check(env.rho1, cand, cfg.bound_tolerance);
    } else if (bs.target == "rho2") {
      v = bound_check(env.rho2, cand, cfg.bound_tolerance);
    } else {
      v = bound_check(env.rho3, cand, cfg.bound_tolerance);
    }
    auto vj = v.to_json();
    vj["target"] = bs.target;
    vj["name"] = bs.name;
    bounds.push_back(vj);
    if (!v.pass) out.exit_code = 2;
  }
  if (!cfg.bounds.empty()) out.result["bounds"] = bounds;

  if (cfg.cp4_cap > 0.0) {
    auto cp4 = check_cp4(*product, cfg.r_ladder, cfg.cp4_cap, pts);
    out.result["cp4"] = cp4.to_json();
    if (!cp4.satisfied) out.exit_code = 2;
    out.result["verdicts"] = {{"cp1", cp1},
                              {"cp2", cp2},
                              {"cp3", cp3},
                              {"cp4", cp4.satisfied
                                          ? "satisfied-on-sample"
                                          : "no-witness-within-cap"}};
  } else {
    out.result["verdicts"] = {{"cp1", cp1}, {"cp2", cp2}, {"cp3", cp3}};
  }

  if (cfg.csv) {
    out.csvs["rho1"] = csv_of_envelope(env.rho1);
    out.csvs["rho2"] = csv_of_envelope(env.rho2);
    out.csvs["rho3"] = csv_of_envelope(env.rho3);
  }
  return out;
}

CommandOutput run_delta(const RunConfig& cfg) {
  auto space = build_space(cfg.space);
  ScanBudget budget{cfg.triple_budget, cfg.seed, cfg.workers};
  CommandOutput out;
  DeltaResult res;
  if (!cfg.products.empty()) {
    auto product = build_product(cfg.products.at(0), space);
    auto pts = sample(product->space(), cfg.sample);
    res = product_delta(*product, pts, budget);
  } else {
    auto pts = sample(*space, cfg.sample);
    res = hyperbolicity_delta(*space, pts, budget);
  }
  std::vector<std::string> witness;
  for (PointId p : res.witness) witness.push_back(space->label(p));
  out.result["delta"] = res.delta;
  out.result["max_defect"] = res.max_defect;
  out.result["witness"] = witness;
  out.result["census"] = res.census.to_json();
  return out;
}

CommandOutput run_compare(const RunConfig& cfg) {
  auto space = build_space(cfg.space);
  auto p = build_product(cfg.products.at(0), space);
  auto q = build_product(cfg.products.at(1), space);
  ComparisonConfig cc;
  cc.truncation_ladder = cfg.truncation_ladder;
  cc.key_ladder = cfg.key_ladder;
  cc.growth_threshold = cfg.growth_threshold;
  cc.stabilize_tol = cfg.stabilize_tol;

  CommandOutput out;
  auto rep = coarse_equivalence_check(*p, *q, cfg.sample, cc);
  out.result["comparison"] = rep.to_json();
  out.result["verdict"] =
      rep.equivalent ? "coarsely equivalent" : "not coarsely equivalent";

  if (cfg.sandwich.has_value()) {
    auto pts = sample(p->space(), cfg.sample);
    SandwichMode mode = cfg.sandwich->mode == "additive"
                            ? SandwichMode::kAdditive
                            : SandwichMode::kMultiplicative;
    auto sv = sandwich_check(*p, *q, mode, cfg.sandwich->shift_or_scale, pts,
                             cfg.bound_tolerance);
    out.result["sandwich"] = sv.to_json();
    if (!sv.pass) out.exit_code = 2;
  }
  if (cfg.csv) {
    out.csvs["s_r_forward"] = csv_of_envelope(rep.forward.s_r_table);
    out.csvs["s_r_backward"] = csv_of_envelope(rep.backward.s_r_table);
  }
  return out;
}

CommandOutput run_boundary_profile(const RunConfig& cfg) {
  auto space = build_space(cfg.space);
  auto product = build_product(cfg.products.at(0), space);
  auto prof = refinement_profile(*product, cfg.radius_ladder, cfg.n_ladder,
                                 cfg.sample);
  CommandOutput out;
  out.result["profile"] = prof.to_json(product->space());

  if (cfg.sequences.has_value()) {
    auto find_point = [&](const std::string& label) {
      auto pts = product->space().ball(cfg.sample.r_out);
      for (PointId p : pts) {
        if (product->space().label(p) == label) return p;
      }
      throw SpecError("config.sequences: unknown point '" + label + "'");
    };
    std::vector<PointId> a, b;
    for (const auto& s : cfg.sequences->a) a.push_back(find_point(s));
    for (const auto& s : cfg.sequences->b) b.push_back(find_point(s));
    out.result["sequences"] =
        sequence_class_check(*product, a, b, cfg.sequences->horizon,
                             cfg.n_ladder)
            .to_json();
  }
  if (cfg.csv) out.csvs["profile_dot"] = prof.to_dot(product->space());
  return out;
}

CommandOutput run_function_test(const RunConfig& cfg) {
  auto space = build_space(cfg.space);
  auto product = build_product(cfg.products.at(0), space);
  auto f = build_function(*cfg.function, space);
  auto pts = sample(product->space(), cfg.sample);

  auto prof = variation_profiles(f, *product, pts, cfg.q_ladder,
                                 cfg.r_ladder, cfg.b_ladder);
  ScanBudget budget{cfg.triple_budget, cfg.seed, cfg.workers};
  auto env = extract_cp_envelopes(*product, pts, budget);
  auto gh = gromov_implies_higson_check(f, *product, env.rho3,
                                        cfg.epsilon_ladder, cfg.r_ladder,
                                        cfg.q_ladder, pts);

  CommandOutput out;
  out.result["profiles"] = prof.to_json();
  out.result["gromov_higson"] = gh.to_json();
  if (!gh.all_pass) out.exit_code = 2;
  if (cfg.csv) {
    std::string csv = "kind,ladder,value,attained,witness\n";
    for (std::size_t i = 0; i < prof.q_ladder.size(); ++i) {
      csv += "gromov," + std::to_string(prof.q_ladder[i]) + "," +
             std::to_string(prof.gromov[i].value) + "," +
             (prof.gromov[i].attained ? "1," : "0,") + "\"" +
             prof.gromov[i].witness + "\"\n";
    }
    out.csvs["profiles"] = csv;
  }
  return out;
}

CommandOutput run_fixtures() {
  CommandOutput out;
  out.result["fixtures"] = {
      {"paper-grid", "grid fixture; params: columns"},
      {"star", "star with k rays; params: rays"},
      {"paper-Y", "sparse column subspace of the grid"},
      {"paper-Z", "dyadic column subspace of the grid"},
      {"rooted-tree", "params: branching, depth, max_vertices"},
      {"grid-graph", "params: width, height"},
      {"weighted-graph", "params: vertices, edges [[u,v,w],...]"},
      {"euclidean", "params: dim, p, step"}};
  out.result["products"] = {"gromov",        "trivial",
                            "busemann",      "family",
                            "compactification", "restriction"};
  out.result["functions"] = {"ball-coordinate", "square-coordinate",
                             "radial", "angular", "constant", "table"};
  return out;
}

}  // namespace

RunResult run(const RunConfig& config) {
  CommandOutput cmd;
  if (config.command == "check-axioms") {
    cmd = run_check_axioms(config);
  } else if (config.command == "delta") {
    cmd = run_delta(config);
  } else if (config.command == "compare") {
    cmd = run_compare(config);
  } else if (config.command == "boundary-profile") {
    cmd = run_boundary_profile(config);
  } else if (config.command == "function-test") {
    cmd = run_function_test(config);
  } else if (config.command == "fixtures") {
    cmd = run_fixtures();
  } else {
    throw SpecError("config.command: unknown command '" + config.command +
                    "'");
  }

  RunResult res;
  res.exit_code = cmd.exit_code;
  res.report["report_version"] = 1;
  res.report["version"] = kVersion;
  res.report["command"] = config.command;
  res.report["config"] = config.to_json();
  res.report["timestamp"] = timestamp_utc();
  res.report["exit_code"] = cmd.exit_code;
  res.report["result"] = cmd.result;
  res.csv_files = std::move(cmd.csvs);
  return res;
}

std::string write_outputs(const RunConfig& config, const RunResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  fs::path report_path =
      fs::path(config.out_dir) / (config.command + "-report.json");
  if (fs::exists(report_path) && !config.force) {
    throw Error("refusing to overwrite " + report_path.string() +
                " (pass force)");
  }
  std::ofstream out(report_path);
  out << result.report.dump(2) << "\n";
  out.close();
  for (const auto& [name, body] : result.csv_files) {
    fs::path p = fs::path(config.out_dir) /
                 (config.command + "-" + name +
                  (name == "profile_dot" ? ".dot" : ".csv"));
    if (fs::exists(p) && !config.force) {
      throw Error("refusing to overwrite " + p.string() + " (pass force)");
    }
    std::ofstream c(p);
    c << body;
  }
  return report_path.string();
}

}  // namespace coarsegeo
