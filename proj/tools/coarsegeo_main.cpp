#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "coarsegeo/runner.hpp"

namespace {

// Exit codes: 0 all verdicts pass, 1 tool error, 2 axiom/bound violation.
int run_command(const std::string& command, const std::string& config_path,
                const std::string& out_dir, long long seed, int workers,
                bool csv, bool force, bool print_report) {
  nlohmann::json doc = nlohmann::json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot open config " << config_path << "\n";
      return 1;
    }
    try {
      in >> doc;
    } catch (const std::exception& e) {
      std::cerr << "error: config is not valid JSON: " << e.what() << "\n";
      return 1;
    }
  }
  if (!command.empty()) doc["command"] = command;
  if (!out_dir.empty()) doc["out"] = out_dir;
  if (seed >= 0) doc["seed"] = seed;
  if (workers > 0) doc["workers"] = workers;
  if (csv) doc["csv"] = true;
  if (force) doc["force"] = true;

  try {
    coarsegeo::RunConfig cfg = coarsegeo::parse_config(doc);
    coarsegeo::RunResult res = coarsegeo::run(cfg);
    std::string path = coarsegeo::write_outputs(cfg, res);
    if (print_report) {
      std::cout << res.report.dump(2) << "\n";
    } else {
      std::cout << "report: " << path << "\n";
    }
    return res.exit_code;
  } catch (const coarsegeo::SpecError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coarse-geometry analysis of controlled products"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  long long seed = -1;
  int workers = 0;
  bool csv = false, force = false, print_report = false;
  app.add_option("--config", config_path, "JSON run config")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory for reports");
  app.add_option("--seed", seed, "sampling / subsampling seed");
  app.add_option("--workers", workers, "parallel worker cap");
  app.add_flag("--csv", csv, "also export CSV staircases/profiles");
  app.add_flag("--force", force, "overwrite existing report files");
  app.add_flag("--print", print_report, "print the report to stdout");

  std::string resolved;
  for (const char* name :
       {"check-axioms", "delta", "compare", "boundary-profile",
        "function-test"}) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&resolved, name] { resolved = name; });
  }
  auto* fixtures = app.add_subcommand("fixtures");
  fixtures->fallthrough();
  std::string fixtures_what = "list";
  fixtures->add_option("what", fixtures_what)->check(CLI::IsMember({"list"}));
  fixtures->callback([&resolved] { resolved = "fixtures"; });

  CLI11_PARSE(app, argc, argv);
  return run_command(resolved, config_path, out_dir, seed, workers, csv,
                     force, print_report);
}
