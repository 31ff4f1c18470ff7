#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "lfuav/outage.hpp"

namespace lfuav {

struct EnvState {
  double n1 = 0.0;  // m
  double n2 = 0.0;  // m
};

struct EnvAction {
  double dn1 = 0.0;  // m
  double dn2 = 0.0;  // m
};

struct AreaBox {
  double x0 = 0.0, x1 = 20000.0;
  double y0 = 0.0, y1 = 20000.0;
  bool contains(double x, double y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
};

struct EnvConfig {
  AreaBox area;
  double altitude = 500.0;   // m, fixed
  double max_step = 500.0;   // m per action component
  int horizon = 100;         // steps per episode
  double mu = 5000.0;        // reward scale
  double eps_guard = 1e-12;  // outage-sum floor keeping the reward finite
};

struct StepResult {
  EnvState next;
  double reward = 0.0;
  double outage_sum = 0.0;
  bool done = false;
};

// Sum of per-user outage probabilities at UAV horizontal position (n1, n2).
using OutageFn = std::function<double(double, double)>;

// Deterministic position-search MDP: the reward of a move is evaluated at
// the state the move leads to.
class UavRelayEnv {
 public:
  UavRelayEnv(EnvConfig cfg, int num_users, OutageFn outage_sum);

  EnvState reset(std::optional<EnvState> start = std::nullopt);
  StepResult step(const EnvAction& action);

  const EnvState& state() const { return state_; }
  int step_index() const { return step_index_; }
  const EnvConfig& config() const { return cfg_; }
  int num_users() const { return num_users_; }
  double outage_sum_at(const EnvState& s) const { return outage_(s.n1, s.n2); }
  double reward_at(const EnvState& s) const;

 private:
  EnvConfig cfg_;
  int num_users_;
  OutageFn outage_;
  EnvState state_;
  int step_index_ = 0;
};

std::array<double, 2> normalize_state(const EnvState& s, const EnvConfig& cfg);
EnvState denormalize_state(const std::array<double, 2>& u, const EnvConfig& cfg);

// Binds the physical model to a UAV position, exposing outage as a pure
// function of the horizontal coordinates. Const-threadsafe.
class OutageModel {
 public:
  OutageModel(NodeLayout layout, RadioConfig radio, AirGroundParams a2g,
              std::vector<DistortionSpec> specs, double m, QuadratureConfig quad,
              double altitude, GroundPathModel ground = {});

  SystemOutage evaluate(double n1, double n2) const;
  double sum(double n1, double n2) const { return evaluate(n1, n2).sum; }
  std::size_t num_users() const { return specs_.size(); }

 private:
  NodeLayout layout_;
  RadioConfig radio_;
  AirGroundParams a2g_;
  std::vector<DistortionSpec> specs_;
  double m_;
  QuadratureConfig quad_;
  double altitude_;
  GroundPathModel ground_;
};

// Precomputed outage-sum map with bilinear interpolation, for fast reward
// lookups during training. Built in parallel; evaluation is const.
class OutageGrid {
 public:
  static OutageGrid build(const OutageModel& model, const AreaBox& area, int n,
                          int threads = 0);
  double operator()(double n1, double n2) const;
  int resolution() const { return n_; }

 private:
  AreaBox area_;
  int n_ = 0;
  std::vector<double> values_;  // row-major, n_ x n_
};

}  // namespace lfuav
