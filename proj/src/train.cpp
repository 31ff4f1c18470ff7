#include "lfuav/train.hpp"

#include <cmath>

namespace lfuav {
namespace {

// Shared training loop: act, step, store, update once past the learning
// trigger. AgentT provides act/update and the replay/warmup knobs via cfg.
template <typename AgentT>
TrainLog run_training(UavRelayEnv& env, AgentT& agent, const TrainOptions& opts,
                      std::uint64_t seed) {
  TrainLog log;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uact(-1.0, 1.0);
  ReplayBuffer buffer(agent.cfg.replay_capacity);
  const double max_step = env.config().max_step;

  long total_steps = 0;
  for (int ep = 0; ep < opts.episodes; ++ep) {
    env.reset();
    double ep_reward = 0.0;
    double last_outage = 0.0;
    std::vector<std::array<double, 2>> path;
    path.reserve(env.config().horizon);

    for (int t = 0; t < env.config().horizon; ++t) {
      const auto s = normalize_state(env.state(), env.config());
      std::array<double, 2> a;
      if (total_steps < agent.cfg.warmup)
        a = {uact(rng), uact(rng)};
      else
        a = agent.act(s, rng);

      const StepResult res =
          env.step(EnvAction{a[0] * max_step, a[1] * max_step});
      const auto s2 = normalize_state(res.next, env.config());
      // The episode ends on a time limit, not a terminal state, and the state
      // carries no step counter; storing done would alias end-of-episode
      // positions with truncated values, so the bootstrap is kept.
      buffer.push({s, a, res.reward, s2, false});

      ep_reward += res.reward;
      last_outage = res.outage_sum;
      path.push_back({res.next.n1, res.next.n2});
      ++total_steps;

      const bool trigger = agent.cfg.literal_buffer_trigger
                               ? buffer.size() >= buffer.capacity()
                               : total_steps >= agent.cfg.warmup &&
                                     buffer.size() >=
                                         static_cast<std::size_t>(agent.cfg.batch);
      if (opts.enable_updates && trigger) {
        for (int u = 0; u < agent.cfg.updates_per_step; ++u) {
          const auto losses = agent.update(buffer, rng);
          if (u + 1 < agent.cfg.updates_per_step) continue;
          if constexpr (std::is_same_v<AgentT, SacAgent>) {
            log.loss_q.push_back(losses.q1);
            log.loss_pi.push_back(losses.pi);
            log.loss_alpha.push_back(losses.alpha);
          } else {
            log.loss_q.push_back(losses.q);
            log.loss_pi.push_back(losses.pi);
          }
        }
      }
    }
    log.episode_reward.push_back(ep_reward);
    log.episode_final_outage.push_back(last_outage);
    log.positions.push_back(std::move(path));
  }
  return log;
}

template <typename AgentT>
std::vector<std::array<double, 2>> run_greedy(UavRelayEnv& env,
                                              const AgentT& agent) {
  env.reset();
  std::vector<std::array<double, 2>> path;
  const double max_step = env.config().max_step;
  for (int t = 0; t < env.config().horizon; ++t) {
    const auto s = normalize_state(env.state(), env.config());
    const auto a = agent.act_greedy(s);
    const StepResult res = env.step(EnvAction{a[0] * max_step, a[1] * max_step});
    path.push_back({res.next.n1, res.next.n2});
  }
  return path;
}

}  // namespace

TrainLog train(UavRelayEnv& env, SacAgent& agent, const TrainOptions& opts,
               std::uint64_t seed) {
  return run_training(env, agent, opts, seed);
}

TrainLog train(UavRelayEnv& env, DdpgAgent& agent, const TrainOptions& opts,
               std::uint64_t seed) {
  return run_training(env, agent, opts, seed);
}

std::vector<std::array<double, 2>> greedy_rollout(UavRelayEnv& env,
                                                  const SacAgent& agent) {
  return run_greedy(env, agent);
}

std::vector<std::array<double, 2>> greedy_rollout(UavRelayEnv& env,
                                                  const DdpgAgent& agent) {
  return run_greedy(env, agent);
}

}  // namespace lfuav
