// gnflow — 1D Green-Naghdi solver in flow-map form.
//
//   gnflow run <config>       integrate and write fields/diagnostics/summary
//   gnflow compare <config>   Lagrangian vs Eulerian cross-validation
//   gnflow converge <config>  refinement ladder (temporal or spatial)

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "gnflow/commands.hpp"
#include "gnflow/config.hpp"
#include "gnflow/errors.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string output_dir;
  bool has_seed = false;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("config", args.config_path, "configuration file")
      ->required();
  sub->add_option("--output-dir", args.output_dir,
                  "override the configured output directory");
  sub->add_option("--seed", args.seed, "override the scenario seed")
      ->each([&args](const std::string&) { args.has_seed = true; });
}

int dispatch(const CommonArgs& args,
             int (*command)(const gnflow::ScenarioConfig&)) {
  try {
    gnflow::ScenarioConfig cfg = gnflow::load_config(args.config_path);
    if (!args.output_dir.empty()) cfg.directory = args.output_dir;
    if (args.has_seed) cfg.seed = args.seed;
    return command(cfg);
  } catch (const gnflow::Error& e) {
    std::cerr << "gnflow: " << e.what() << "\n";
    return gnflow::exit_code_for(e.kind());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"1D Green-Naghdi solver (Lagrangian flow-map formulation)"};
  app.set_version_flag("--version", "gnflow 0.1.0");
  app.require_subcommand(1);

  CommonArgs run_args, compare_args, converge_args;
  add_common(app.add_subcommand("run", "integrate a scenario"), run_args);
  add_common(app.add_subcommand("compare", "cross-validate the two solvers"),
             compare_args);
  add_common(app.add_subcommand("converge", "run a refinement ladder"),
             converge_args);

  CLI11_PARSE(app, argc, argv);

  if (app.got_subcommand("run")) return dispatch(run_args, gnflow::command_run);
  if (app.got_subcommand("compare"))
    return dispatch(compare_args, gnflow::command_compare);
  return dispatch(converge_args, gnflow::command_converge);
}
