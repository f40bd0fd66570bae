#include <exception>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "slitnet/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = ".";
  bool parallel = false;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config file (json)")
      ->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_flag("--parallel", args.parallel,
                "enable deterministic parallel reductions");
  cmd->add_option("--seed", args.seed, "override the config seed");
}

int dispatch(int (*runner)(const slitnet::Json&, const slitnet::RunOptions&),
             const CommonArgs& args) {
  try {
    const std::filesystem::path config_path = args.config_path;
    const slitnet::Json config = slitnet::load_json_file(config_path);

    slitnet::RunOptions opts;
    opts.config_dir = config_path.has_parent_path()
                          ? config_path.parent_path()
                          : std::filesystem::path(".");
    opts.out_dir = args.out_dir;
    opts.parallel = args.parallel;
    opts.seed = args.seed;
    std::filesystem::create_directories(opts.out_dir);

    return runner(config, opts);
  } catch (const slitnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return slitnet::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return slitnet::kExitNumeric;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "slitnet: multi-slit path-sum simulator, trainer and cross-checker"};
  app.require_subcommand(1);

  CommonArgs simulate_args, train_args, equivalence_args, actions_args;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "amplitude/probability over a medium or detector sweep");
  add_common(simulate, simulate_args);

  CLI::App* train = app.add_subcommand(
      "train", "gradient descent on slit positions against a target function");
  add_common(train, train_args);

  CLI::App* equivalence = app.add_subcommand(
      "equivalence",
      "compare the path sum against the mapped two-layer network");
  add_common(equivalence, equivalence_args);

  CLI::App* actions = app.add_subcommand(
      "actions", "closed-form actions with numerical cross-checks");
  add_common(actions, actions_args);

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    return dispatch(slitnet::run_simulate, simulate_args);
  }
  if (train->parsed()) return dispatch(slitnet::run_train, train_args);
  if (equivalence->parsed()) {
    return dispatch(slitnet::run_equivalence, equivalence_args);
  }
  return dispatch(slitnet::run_actions, actions_args);
}
