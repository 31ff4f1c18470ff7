#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "lfuav/agents.hpp"

namespace lfuav {
namespace {

std::array<double, 4> critic_input(const std::array<double, 2>& s,
                                   const std::array<double, 2>& a) {
  return {s[0], s[1], a[0], a[1]};
}

std::vector<Transition> gather(const ReplayBuffer& buffer,
                               const std::vector<std::size_t>& idx) {
  std::vector<Transition> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(buffer[i]);
  return out;
}

void wd(std::ostream& os, double x) {
  os << std::bit_cast<std::uint64_t>(x) << ' ';
}

void rd(std::istream& is, double& x) {
  std::uint64_t bits;
  is >> bits;
  x = std::bit_cast<double>(bits);
}

void write_mlp(std::ostream& os, const Mlp& net) {
  os << net.sizes.size();
  for (int s : net.sizes) os << ' ' << s;
  os << '\n';
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    for (double x : net.w[l]) wd(os, x);
    for (double x : net.b[l]) wd(os, x);
    os << '\n';
  }
}

void read_mlp(std::istream& is, Mlp& net) {
  std::size_t ns;
  is >> ns;
  std::vector<int> sizes(ns);
  for (auto& s : sizes) is >> s;
  if (sizes != net.sizes)
    throw std::runtime_error("checkpoint: network shape mismatch");
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    for (double& x : net.w[l]) rd(is, x);
    for (double& x : net.b[l]) rd(is, x);
  }
}

void write_adam(std::ostream& os, const Adam& a) {
  os << a.t << '\n';
  for (const auto* grp : {&a.mw, &a.vw, &a.mb, &a.vb})
    for (const auto& v : *grp) {
      for (double x : v) wd(os, x);
      os << '\n';
    }
}

void read_adam(std::istream& is, Adam& a) {
  is >> a.t;
  for (auto* grp : {&a.mw, &a.vw, &a.mb, &a.vb})
    for (auto& v : *grp)
      for (double& x : v) rd(is, x);
}

}  // namespace

DdpgAgent::DdpgAgent(const DdpgConfig& config, std::uint64_t init_seed)
    : cfg(config) {
  std::mt19937_64 rng(init_seed);
  std::vector<int> asz = {2};
  asz.insert(asz.end(), cfg.hidden.begin(), cfg.hidden.end());
  asz.push_back(2);
  std::vector<int> qsz = {4};
  qsz.insert(qsz.end(), cfg.hidden.begin(), cfg.hidden.end());
  qsz.push_back(1);

  actor = Mlp::make(asz, rng);
  critic = Mlp::make(qsz, rng);
  actor_t = actor;
  critic_t = critic;
  opt_q = Adam::zeros_like(critic);
  opt_pi = Adam::zeros_like(actor);
}

std::array<double, 2> DdpgAgent::act_greedy(std::span<const double> state) const {
  const auto out = actor.forward(state);
  return {std::tanh(out[0]), std::tanh(out[1])};
}

std::array<double, 2> DdpgAgent::act(std::span<const double> state,
                                     std::mt19937_64& rng) {
  auto a = act_greedy(state);
  if (cfg.noise_sigma > 0.0) {
    std::normal_distribution<double> n(0.0, cfg.noise_sigma);
    for (auto& x : a) x = std::clamp(x + n(rng), -1.0, 1.0);
  }
  return a;
}

std::vector<double> DdpgAgent::critic_targets(
    const std::vector<Transition>& batch) const {
  std::vector<double> y(batch.size());
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto& t = batch[j];
    const auto out = actor_t.forward(t.s2);
    const std::array<double, 2> a2 = {std::tanh(out[0]), std::tanh(out[1])};
    const double q = critic_t.forward(critic_input(t.s2, a2))[0];
    y[j] = t.r + cfg.discount * (t.done ? 0.0 : 1.0) * q;
  }
  return y;
}

double DdpgAgent::critic_loss(const std::vector<Transition>& batch,
                              const std::vector<double>& targets) const {
  double loss = 0.0;
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const double d =
        critic.forward(critic_input(batch[j].s, batch[j].a))[0] - targets[j];
    loss += 0.5 * d * d;
  }
  return loss / static_cast<double>(batch.size());
}

MlpGrad DdpgAgent::critic_loss_grad(const std::vector<Transition>& batch,
                                    const std::vector<double>& targets) const {
  MlpGrad g = MlpGrad::zeros_like(critic);
  MlpTrace trace;
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto in = critic_input(batch[j].s, batch[j].a);
    const double v = forward_trace(critic, in, trace)[0];
    backward(critic, trace, std::array<double, 1>{v - targets[j]}, g);
  }
  g.scale(1.0 / static_cast<double>(batch.size()));
  return g;
}

double DdpgAgent::actor_loss(const std::vector<Transition>& batch) const {
  double loss = 0.0;
  for (const auto& t : batch) {
    const auto out = actor.forward(t.s);
    const std::array<double, 2> a = {std::tanh(out[0]), std::tanh(out[1])};
    loss += -critic.forward(critic_input(t.s, a))[0];
  }
  return loss / static_cast<double>(batch.size());
}

MlpGrad DdpgAgent::actor_loss_grad(const std::vector<Transition>& batch) const {
  MlpGrad g = MlpGrad::zeros_like(actor);
  MlpTrace atrace, qtrace;
  for (const auto& t : batch) {
    const auto out = forward_trace(actor, t.s, atrace);
    const std::array<double, 2> a = {std::tanh(out[0]), std::tanh(out[1])};
    forward_trace(critic, critic_input(t.s, a), qtrace);
    MlpGrad scratch = MlpGrad::zeros_like(critic);
    std::vector<double> d_in;
    backward(critic, qtrace, std::array<double, 1>{-1.0}, scratch, &d_in);
    const std::array<double, 2> d_out = {d_in[2] * (1.0 - a[0] * a[0]),
                                         d_in[3] * (1.0 - a[1] * a[1])};
    backward(actor, atrace, d_out, g);
  }
  g.scale(1.0 / static_cast<double>(batch.size()));
  return g;
}

DdpgAgent::Losses DdpgAgent::update(const ReplayBuffer& buffer,
                                    std::mt19937_64& rng) {
  if (buffer.size() < static_cast<std::size_t>(cfg.batch))
    throw std::invalid_argument("DdpgAgent::update: buffer smaller than batch");
  const auto batch = gather(buffer, buffer.sample_indices(cfg.batch, rng));

  Losses out;
  const auto targets = critic_targets(batch);
  out.q = critic_loss(batch, targets);
  opt_q.step(critic, critic_loss_grad(batch, targets), cfg.lr_q);

  out.pi = actor_loss(batch);
  opt_pi.step(actor, actor_loss_grad(batch), cfg.lr_pi);

  soft_update(critic_t, critic, cfg.tau);
  soft_update(actor_t, actor, cfg.tau);
  return out;
}

void save_checkpoint(std::ostream& out, const DdpgAgent& agent,
                     const std::mt19937_64& rng) {
  out << "lfuav-checkpoint 1 ddpg\n";
  write_mlp(out, agent.actor);
  write_mlp(out, agent.critic);
  write_mlp(out, agent.actor_t);
  write_mlp(out, agent.critic_t);
  write_adam(out, agent.opt_q);
  write_adam(out, agent.opt_pi);
  out << rng << '\n';
}

void load_checkpoint(std::istream& in, DdpgAgent& agent, std::mt19937_64& rng) {
  std::string magic, kind;
  int version;
  in >> magic >> version >> kind;
  if (magic != "lfuav-checkpoint" || version != 1 || kind != "ddpg")
    throw std::runtime_error("checkpoint: bad header");
  read_mlp(in, agent.actor);
  read_mlp(in, agent.critic);
  read_mlp(in, agent.actor_t);
  read_mlp(in, agent.critic_t);
  read_adam(in, agent.opt_q);
  read_adam(in, agent.opt_pi);
  in >> rng;
  if (!in) throw std::runtime_error("checkpoint: truncated");
}

}  // namespace lfuav
