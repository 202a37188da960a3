// mlsim: command-line driver for soliton construction, dynamics and checks.
#include <CLI11.hpp>

#include <iostream>

#include "mlsim/config.hpp"
#include "mlsim/errors.hpp"
#include "mlsim/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Solitons of a charged rotating particle coupled to a 2D field"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out = ".";
  bool quiet = false;
  std::string chosen;

  for (const auto& name : mlsim::app::subcommands()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "INI configuration file")->required();
    sub->add_option("--seed", seed, "overrides experiment.seed");
    sub->add_option("--out", out, "output directory");
    sub->add_flag("--quiet", quiet, "suppress per-check output");
    sub->callback([&chosen, name] { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  mlsim::app::RunOptions opt;
  opt.out_dir = out;
  opt.quiet = quiet;
  for (auto* sub : app.get_subcommands())
    if (sub->count("--seed") > 0) opt.seed = seed;

  mlsim::app::ExperimentConfig cfg;
  try {
    cfg = mlsim::app::load_config(config_path);
  } catch (const mlsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  return mlsim::app::run(chosen, cfg, opt);
}
