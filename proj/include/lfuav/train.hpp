#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lfuav/agents.hpp"
#include "lfuav/env.hpp"

namespace lfuav {

struct TrainLog {
  std::vector<double> episode_reward;        // cumulative reward per episode
  std::vector<double> episode_final_outage;  // outage sum at the episode's last state
  std::vector<std::vector<std::array<double, 2>>> positions;  // (n1, n2) per step
  std::vector<double> loss_q, loss_pi, loss_alpha;            // per update
};

struct TrainOptions {
  int episodes = 300;
  bool enable_updates = true;  // off: pure rollout with the same action stream
};

TrainLog train(UavRelayEnv& env, SacAgent& agent, const TrainOptions& opts,
               std::uint64_t seed);
TrainLog train(UavRelayEnv& env, DdpgAgent& agent, const TrainOptions& opts,
               std::uint64_t seed);

// Deterministic rollout of the frozen greedy policy from the default start;
// returns the visited positions (horizon entries, last one is the final
// position).
std::vector<std::array<double, 2>> greedy_rollout(UavRelayEnv& env,
                                                  const SacAgent& agent);
std::vector<std::array<double, 2>> greedy_rollout(UavRelayEnv& env,
                                                  const DdpgAgent& agent);

}  // namespace lfuav
