#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>

#include "lfuav/config.hpp"
#include "lfuav/train.hpp"

namespace lfuav {

// Exit codes shared by the CLI: 0 success, 1 acceptance violation,
// 2 configuration error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

// Closed form vs region-membership Monte Carlo over random UAV positions.
// Prints one line per geometry; nonzero exit when any |z| > 4.
int run_validate(const ExperimentConfig& cfg, std::ostream& report);

// Outage map over a grid_n x grid_n lattice; writes outage_map.csv and
// prints the argmin cell. grid_n <= 0 falls back to cfg.grid_resolution.
struct GridArgmin {
  double n1 = 0.0, n2 = 0.0;
  double outage_sum = 0.0;
};
int run_outage_map(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                   int grid_n, std::ostream& report, GridArgmin* argmin = nullptr);

// Full training run: rewards.csv, outage.csv, trajectory.csv (greedy rollout
// of the final policy), checkpoint, manifest.
struct TrainRunResult {
  TrainLog log;
  std::vector<std::array<double, 2>> trajectory;  // greedy rollout positions
  double final_n1 = 0.0, final_n2 = 0.0;
  double final_outage_sum = 0.0;  // full-tolerance evaluation at the final position
  std::shared_ptr<SacAgent> sac;    // set for sac runs
  std::shared_ptr<DdpgAgent> ddpg;  // set for ddpg runs
};

// In-memory training run; cache (optional) is a prebuilt outage grid reused
// across runs with the same physics.
TrainRunResult train_once(const ExperimentConfig& cfg, const std::string& agent_kind,
                          std::uint64_t seed, const OutageGrid* cache = nullptr);

int run_train(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
              const std::string& agent_kind, std::ostream& report,
              TrainRunResult* result = nullptr);

// SAC vs DDPG over matched seeds and the configured D-pairs; writes
// compare.csv. Prints a warning line when DDPG beats SAC on mean final
// outage (qualitative claim, warn-only).
int run_compare(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                std::ostream& report);

}  // namespace lfuav
