// sburgers: pseudo-spectral stochastic Burgers experiments on the torus.
//
// Subcommands: simulate, ensemble, sweep-nu, oracle-compare, convergence.
// Each takes a flat key=value config; --seed and --out override run.seed and
// run.out_dir. Run outcomes (blow_up, picard_failure) are results recorded in
// the manifest, exit status 0; config or environment problems exit 1 with a
// machine-readable error record on stderr.

#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "sburgers/config.hpp"
#include "sburgers/runner.hpp"
#include "sburgers/version.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  bool has_seed = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", args.seed, "override run.seed");
  cmd->add_option("--out", args.out_dir, "override run.out_dir");
}

int dispatch(const CommonArgs& args,
             const std::function<int(const sburgers::ExperimentConfig&)>& runner) {
  sburgers::ParsedConfig parsed = sburgers::parse_config_file(args.config_path);
  for (std::size_t i = 0; i < parsed.warnings.size(); ++i)
    std::cerr << "warning." << i << " = " << parsed.warnings[i] << "\n";
  if (args.seed >= 0) parsed.config.seed = static_cast<std::uint64_t>(args.seed);
  if (!args.out_dir.empty()) parsed.config.out_dir = args.out_dir;
  return runner(parsed.config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic Burgers pseudo-spectral experiment runner"};
  app.set_version_flag("--version", std::string(sburgers::kVersion));
  app.require_subcommand(1);

  std::map<std::string, std::function<int(const sburgers::ExperimentConfig&)>> runners{
      {"simulate", sburgers::run_simulate},
      {"ensemble", sburgers::run_ensemble},
      {"sweep-nu", sburgers::run_sweep_nu},
      {"oracle-compare", sburgers::run_oracle_compare},
      {"convergence", sburgers::run_convergence},
  };
  std::map<std::string, std::string> descriptions{
      {"simulate", "one trajectory with the full estimate report"},
      {"ensemble", "N samples with aggregated statistics"},
      {"sweep-nu", "vanishing-viscosity sweep tables"},
      {"oracle-compare", "solver versus exact gradient-case references"},
      {"convergence", "dt (and optional n) refinement slopes"},
  };

  std::map<std::string, CommonArgs> args;
  for (auto& [name, fn] : runners) add_common(app.add_subcommand(name, descriptions[name]), args[name]);

  CLI11_PARSE(app, argc, argv);

  for (auto& [name, fn] : runners) {
    if (!app.get_subcommand(name)->parsed()) continue;
    try {
      return dispatch(args[name], fn);
    } catch (const sburgers::ConfigError& e) {
      std::cerr << "error.kind = config\n";
      if (!e.field().empty()) std::cerr << "error.field = " << e.field() << "\n";
      if (e.line() > 0) std::cerr << "error.line = " << e.line() << "\n";
      std::cerr << "error.message = " << e.what() << "\n";
      return 1;
    } catch (const std::exception& e) {
      std::cerr << "error.kind = runtime\n";
      std::cerr << "error.message = " << e.what() << "\n";
      return 1;
    }
  }
  return 1;
}
