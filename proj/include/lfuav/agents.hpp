#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "lfuav/mlp.hpp"
#include "lfuav/replay.hpp"

namespace lfuav {

struct SacConfig {
  double lr_q = 0.003;       // lambda_Q, twin critics
  double lr_pi = 0.001;      // lambda_pi
  double lr_alpha = 0.0003;  // lambda_alpha
  double discount = 0.9;
  int batch = 128;
  double tau = 0.005;
  double alpha0 = 0.05;
  double entropy_target = -2.0;  // -dim(A)
  std::vector<int> hidden = {128, 128};
  // Uniform-random env steps before updates start. The long default matters:
  // the random walk from the origin densely covers the low-outage basin, and
  // that coverage is what lets the critic resolve the sharp reward peak.
  int warmup = 2000;
  int updates_per_step = 1;  // gradient updates per environment step
  bool literal_buffer_trigger = false;  // learn only once the buffer is full
  bool twin_critics = true;
  std::size_t replay_capacity = 10000;
};

struct DdpgConfig {
  double lr_q = 0.003;
  double lr_pi = 0.001;
  double discount = 0.9;
  int batch = 128;
  double tau = 0.005;
  double noise_sigma = 0.1;  // of the [-1,1] action range
  std::vector<int> hidden = {128, 128};
  int warmup = 500;
  int updates_per_step = 1;
  bool literal_buffer_trigger = false;
  std::size_t replay_capacity = 10000;
};

struct GaussianSample {
  std::array<double, 2> action;  // tanh-squashed
  double log_prob = 0.0;
  std::array<double, 2> eps;     // standard-normal draws used
};

inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;

// Reparameterized draw from the tanh-squashed Gaussian policy. The policy
// head emits (mu, log sigma) per action dimension; log_prob carries the
// tanh change-of-variables correction.
GaussianSample squashed_gaussian_sample(const Mlp& policy,
                                        std::span<const double> state,
                                        std::mt19937_64& rng);
// Same map with the noise supplied explicitly (deterministic; used by the
// updates and the finite-difference checks).
GaussianSample squashed_gaussian_apply(const Mlp& policy,
                                       std::span<const double> state,
                                       const std::array<double, 2>& eps);

class SacAgent {
 public:
  SacAgent(const SacConfig& cfg, std::uint64_t init_seed);

  std::array<double, 2> act(std::span<const double> state, std::mt19937_64& rng);
  std::array<double, 2> act_greedy(std::span<const double> state) const;

  struct Losses {
    double q1 = 0.0, q2 = 0.0, pi = 0.0, alpha = 0.0;
    double temperature = 0.0;  // alpha after the update
  };
  Losses update(const ReplayBuffer& buffer, std::mt19937_64& rng);

  double alpha() const;

  // Loss surfaces with explicit noise, deterministic given parameters.
  std::vector<double> critic_targets(
      const std::vector<Transition>& batch,
      const std::vector<std::array<double, 2>>& eps_next) const;
  double critic_loss(const std::vector<Transition>& batch,
                     const std::vector<double>& targets, int which) const;
  double policy_loss(const std::vector<Transition>& batch,
                     const std::vector<std::array<double, 2>>& eps) const;
  double temperature_loss(const std::vector<Transition>& batch,
                          const std::vector<std::array<double, 2>>& eps) const;

  MlpGrad critic_loss_grad(const std::vector<Transition>& batch,
                           const std::vector<double>& targets, int which) const;
  MlpGrad policy_loss_grad(const std::vector<Transition>& batch,
                           const std::vector<std::array<double, 2>>& eps) const;
  double temperature_loss_grad(const std::vector<Transition>& batch,
                               const std::vector<std::array<double, 2>>& eps) const;

  SacConfig cfg;
  Mlp policy;        // s -> (mu, log sigma)
  Mlp q1, q2;        // (s, a) -> value
  Mlp qt1, qt2;      // targets
  double log_alpha;
  Adam opt_q1, opt_q2, opt_pi;
  ScalarAdam opt_alpha;
};

class DdpgAgent {
 public:
  DdpgAgent(const DdpgConfig& cfg, std::uint64_t init_seed);

  std::array<double, 2> act(std::span<const double> state, std::mt19937_64& rng);
  std::array<double, 2> act_greedy(std::span<const double> state) const;

  struct Losses {
    double q = 0.0, pi = 0.0;
  };
  Losses update(const ReplayBuffer& buffer, std::mt19937_64& rng);

  std::vector<double> critic_targets(const std::vector<Transition>& batch) const;
  double critic_loss(const std::vector<Transition>& batch,
                     const std::vector<double>& targets) const;
  double actor_loss(const std::vector<Transition>& batch) const;
  MlpGrad critic_loss_grad(const std::vector<Transition>& batch,
                           const std::vector<double>& targets) const;
  MlpGrad actor_loss_grad(const std::vector<Transition>& batch) const;

  DdpgConfig cfg;
  Mlp actor;    // s -> pre-tanh action
  Mlp critic;   // (s, a) -> value
  Mlp actor_t, critic_t;
  Adam opt_q, opt_pi;
};

// Checkpoints: text dump of all parameters (doubles stored by bit pattern),
// optimizer state and the RNG stream; loading restores bitwise-identical
// subsequent behavior.
void save_checkpoint(std::ostream& out, const SacAgent& agent,
                     const std::mt19937_64& rng);
void load_checkpoint(std::istream& in, SacAgent& agent, std::mt19937_64& rng);
void save_checkpoint(std::ostream& out, const DdpgAgent& agent,
                     const std::mt19937_64& rng);
void load_checkpoint(std::istream& in, DdpgAgent& agent, std::mt19937_64& rng);

}  // namespace lfuav
