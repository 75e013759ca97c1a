#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coarsegeo/sampling.hpp"

namespace coarsegeo {

// A fully validated run recipe. Everything a command needs lives here, so
// a run is reproducible from its config alone.
struct RunConfig {
  std::string command;
  nlohmann::json space;
  std::vector<nlohmann::json> products;
  std::optional<nlohmann::json> function;
  SampleSpec sample;

  std::vector<double> r_ladder = {1, 2, 5, 10, 20, 50};
  std::vector<double> q_ladder = {1, 2, 5, 10, 20, 50};
  std::vector<double> b_ladder = {0, 5, 20, 50};
  std::vector<double> n_ladder = {1, 2, 5};
  std::vector<double> radius_ladder = {10, 20, 40};
  std::vector<double> key_ladder = {1, 2, 5, 10, 20, 50};
  std::vector<double> truncation_ladder = {50, 100, 200};
  std::vector<double> epsilon_ladder = {0.3, 0.1};

  double cp4_cap = 0.0;  // 0: skip the CP4 scan
  std::size_t triple_budget = 2'000'000;
  double bound_tolerance = 1e-7;
  double growth_threshold = 1.0;
  double stabilize_tol = 1e-9;

  // check-axioms extras: named bound candidates per envelope.
  struct BoundSpec {
    std::string target;  // "rho1" | "rho2" | "rho3"
    std::string name;
    nlohmann::json params;
  };
  std::vector<BoundSpec> bounds;

  // check-axioms: truncation-ladder blow-up probe of one envelope.
  struct DivergenceSpec {
    std::string target;       // "rho1" | "rho2" | "rho3"
    std::vector<double> key;  // one entry (rho1/rho2) or two (rho3)
    double growth_threshold = 1.0;
  };
  std::optional<DivergenceSpec> divergence;

  // compare extras.
  struct SandwichSpec {
    std::string mode;  // "additive" | "multiplicative"
    double shift_or_scale = 0.0;
  };
  std::optional<SandwichSpec> sandwich;

  // boundary-profile extras: explicit sequences by point label.
  struct SequenceSpec {
    std::vector<std::string> a, b;
    std::size_t horizon = 0;
  };
  std::optional<SequenceSpec> sequences;

  std::uint64_t seed = 0;
  int workers = 0;
  std::string out_dir = "reports";
  bool csv = false;
  bool force = false;

  nlohmann::ordered_json to_json() const;
};

// Parses and validates a config document; unknown keys are rejected with
// their field path, defaults are filled.
RunConfig parse_config(const nlohmann::json& doc);

struct RunResult {
  int exit_code = 0;  // 0 pass, 2 violation verdicts found
  nlohmann::ordered_json report;
  std::map<std::string, std::string> csv_files;  // name -> contents
};

// Dispatches to the named command and assembles the report (deterministic
// except for the timestamp field). Throws on tool errors; the CLI maps
// those to exit 1.
RunResult run(const RunConfig& config);

// Writes report (and CSVs) under config.out_dir. Reports are append-only:
// existing files are an error unless force is set. Returns the report path.
std::string write_outputs(const RunConfig& config, const RunResult& result);

}  // namespace coarsegeo
