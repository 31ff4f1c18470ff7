#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lfuav/experiments.hpp"

using namespace lfuav;

int main(int argc, char** argv) {
  CLI::App app{"Lossy-forward UAV relay outage analysis and relay placement"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  bool have_seed = false;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "JSON config file (or a run manifest to replay)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "override the config seed")
        ->each([&](const std::string&) { have_seed = true; });
  };

  auto* validate = app.add_subcommand(
      "validate", "closed-form outage vs Monte Carlo over random geometries");
  add_common(validate);

  int grid_n = 0;
  auto* outage_map =
      app.add_subcommand("outage-map", "outage over a position lattice, CSV");
  add_common(outage_map);
  outage_map->add_option("--grid", grid_n, "lattice resolution per axis");

  std::string agent = "sac";
  auto* train = app.add_subcommand("train", "train a placement agent");
  add_common(train);
  train->add_option("--agent", agent, "sac or ddpg")
      ->check(CLI::IsMember({"sac", "ddpg"}));

  auto* compare =
      app.add_subcommand("compare", "SAC vs DDPG over matched seeds and D-pairs");
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    ExperimentConfig cfg =
        config_path.empty() ? default_config() : load_config_file(config_path);
    if (have_seed) cfg.seed = seed;

    if (validate->parsed()) return run_validate(cfg, std::cout);
    if (outage_map->parsed())
      return run_outage_map(cfg, out_dir, grid_n, std::cout);
    if (train->parsed()) return run_train(cfg, out_dir, agent, std::cout);
    if (compare->parsed()) return run_compare(cfg, out_dir, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
