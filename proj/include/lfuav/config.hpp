#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lfuav/agents.hpp"
#include "lfuav/env.hpp"

namespace lfuav {

inline constexpr const char* kVersion = "1.0.0";

struct ValidateConfig {
  int geometries = 20;
  std::size_t mc_samples = 1000000;
  int mc_workers = 8;
  std::vector<double> distortions = {0.1, 0.2, 0.3};
};

struct TrainRunConfig {
  int episodes = 300;
  bool use_cache = true;  // bilinear outage map during training
  int cache_resolution = 201;
};

// One structured config file reproduces the whole study; an empty file
// yields the published parameter tables.
struct ExperimentConfig {
  NodeLayout layout;  // uav holds the start position (z = altitude)
  RadioConfig radio;
  AirGroundParams a2g;
  GroundPathModel ground;
  double fading_m = 2.0;
  std::vector<DistortionSpec> distortion;
  EnvConfig env;
  QuadratureConfig quadrature{1e-9, 1e-9, 400};
  QuadratureConfig training_quadrature{1e-6, 1e-6, 200};
  SacConfig sac;
  DdpgConfig ddpg;
  TrainRunConfig train;
  ValidateConfig validate;
  int grid_resolution = 41;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  // D-pairs exercised by the compare command
  std::vector<std::array<double, 2>> compare_distortions = {{0.2, 0.2}, {0.1, 0.3}};
};

ExperimentConfig default_config();
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

// Accepts either a plain config file or a run manifest (whose embedded
// config and seed are used), so a run can be replayed from its manifest.
ExperimentConfig load_config_file(const std::filesystem::path& path);

std::string config_hash(const ExperimentConfig& cfg);

struct RunManifest {
  std::string command;
  ExperimentConfig config;
  std::string hash;
  std::string started_utc, finished_utc;
  std::vector<std::string> outputs;
  std::string status = "running";

  nlohmann::json to_json() const;
  void write(const std::filesystem::path& path) const;
};

}  // namespace lfuav
