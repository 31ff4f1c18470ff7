#include <algorithm>
#include <bit>
#include <string>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "lfuav/agents.hpp"

namespace lfuav {
namespace {

constexpr double kTanhEps = 1e-9;
constexpr double kHalfLog2Pi = 0.9189385332046727;  // 0.5*log(2*pi)

struct PolicyEval {
  MlpTrace trace;
  std::array<double, 2> mu, log_std, sigma, u, a;
  std::array<bool, 2> clamped;
  double log_prob = 0.0;
};

PolicyEval eval_policy(const Mlp& policy, std::span<const double> state,
                       const std::array<double, 2>& eps) {
  PolicyEval ev;
  const auto out = forward_trace(policy, state, ev.trace);
  for (int i = 0; i < 2; ++i) {
    ev.mu[i] = out[i];
    const double ls_raw = out[2 + i];
    ev.clamped[i] = ls_raw < kLogStdMin || ls_raw > kLogStdMax;
    ev.log_std[i] = std::clamp(ls_raw, kLogStdMin, kLogStdMax);
    ev.sigma[i] = std::exp(ev.log_std[i]);
    ev.u[i] = ev.mu[i] + ev.sigma[i] * eps[i];
    ev.a[i] = std::tanh(ev.u[i]);
    ev.log_prob += -0.5 * eps[i] * eps[i] - ev.log_std[i] - kHalfLog2Pi -
                   std::log(1.0 - ev.a[i] * ev.a[i] + kTanhEps);
  }
  return ev;
}

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


// Doubles are checkpointed as raw bit patterns; hexfloat input parsing via
// operator>> is unreliable (LWG 2381).
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

GaussianSample squashed_gaussian_sample(const Mlp& policy,
                                        std::span<const double> state,
                                        std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  std::array<double, 2> eps = {n01(rng), n01(rng)};
  return squashed_gaussian_apply(policy, state, eps);
}

GaussianSample squashed_gaussian_apply(const Mlp& policy,
                                       std::span<const double> state,
                                       const std::array<double, 2>& eps) {
  const PolicyEval ev = eval_policy(policy, state, eps);
  return {ev.a, ev.log_prob, eps};
}

SacAgent::SacAgent(const SacConfig& config, std::uint64_t init_seed) : cfg(config) {
  std::mt19937_64 rng(init_seed);
  std::vector<int> psz = {2};
  psz.insert(psz.end(), cfg.hidden.begin(), cfg.hidden.end());
  psz.push_back(4);
  std::vector<int> qsz = {4};
  qsz.insert(qsz.end(), cfg.hidden.begin(), cfg.hidden.end());
  qsz.push_back(1);

  policy = Mlp::make(psz, rng);
  q1 = Mlp::make(qsz, rng);
  q2 = Mlp::make(qsz, rng);
  qt1 = q1;
  qt2 = q2;
  log_alpha = std::log(cfg.alpha0);
  opt_q1 = Adam::zeros_like(q1);
  opt_q2 = Adam::zeros_like(q2);
  opt_pi = Adam::zeros_like(policy);
}

double SacAgent::alpha() const { return std::exp(log_alpha); }

std::array<double, 2> SacAgent::act(std::span<const double> state,
                                    std::mt19937_64& rng) {
  return squashed_gaussian_sample(policy, state, rng).action;
}

std::array<double, 2> SacAgent::act_greedy(std::span<const double> state) const {
  const auto out = policy.forward(state);
  return {std::tanh(out[0]), std::tanh(out[1])};
}

std::vector<double> SacAgent::critic_targets(
    const std::vector<Transition>& batch,
    const std::vector<std::array<double, 2>>& eps_next) const {
  std::vector<double> y(batch.size());
  const double a = alpha();
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto& t = batch[j];
    const auto nxt = squashed_gaussian_apply(policy, t.s2, eps_next[j]);
    const auto in = critic_input(t.s2, nxt.action);
    double q = qt1.forward(in)[0];
    if (cfg.twin_critics) q = std::min(q, qt2.forward(in)[0]);
    y[j] = t.r + cfg.discount * (t.done ? 0.0 : 1.0) * (q - a * nxt.log_prob);
  }
  return y;
}

double SacAgent::critic_loss(const std::vector<Transition>& batch,
                             const std::vector<double>& targets, int which) const {
  const Mlp& q = which == 1 ? q1 : q2;
  double loss = 0.0;
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const double d =
        q.forward(critic_input(batch[j].s, batch[j].a))[0] - targets[j];
    loss += 0.5 * d * d;
  }
  return loss / static_cast<double>(batch.size());
}

MlpGrad SacAgent::critic_loss_grad(const std::vector<Transition>& batch,
                                   const std::vector<double>& targets,
                                   int which) const {
  const Mlp& q = which == 1 ? q1 : q2;
  MlpGrad g = MlpGrad::zeros_like(q);
  MlpTrace trace;
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto in = critic_input(batch[j].s, batch[j].a);
    const double v = forward_trace(q, in, trace)[0];
    const double d_out = v - targets[j];
    backward(q, trace, std::array<double, 1>{d_out}, g);
  }
  g.scale(1.0 / static_cast<double>(batch.size()));
  return g;
}

double SacAgent::policy_loss(const std::vector<Transition>& batch,
                             const std::vector<std::array<double, 2>>& eps) const {
  const double a = alpha();
  double loss = 0.0;
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto ev = eval_policy(policy, batch[j].s, eps[j]);
    const auto in = critic_input(batch[j].s, ev.a);
    double q = q1.forward(in)[0];
    if (cfg.twin_critics) q = std::min(q, q2.forward(in)[0]);
    loss += a * ev.log_prob - q;
  }
  return loss / static_cast<double>(batch.size());
}

MlpGrad SacAgent::policy_loss_grad(
    const std::vector<Transition>& batch,
    const std::vector<std::array<double, 2>>& eps) const {
  const double a = alpha();
  MlpGrad g = MlpGrad::zeros_like(policy);
  MlpTrace qtrace;
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto ev = eval_policy(policy, batch[j].s, eps[j]);
    const auto in = critic_input(batch[j].s, ev.a);

    // Gradient of the min critic w.r.t. its action input.
    const Mlp* qmin = &q1;
    if (cfg.twin_critics) {
      const double v1 = q1.forward(in)[0];
      const double v2 = q2.forward(in)[0];
      if (v2 < v1) qmin = &q2;
    }
    forward_trace(*qmin, in, qtrace);
    MlpGrad scratch = MlpGrad::zeros_like(*qmin);
    std::vector<double> d_in;
    backward(*qmin, qtrace, std::array<double, 1>{1.0}, scratch, &d_in);

    std::array<double, 4> d_out{};
    for (int i = 0; i < 2; ++i) {
      const double one_m_a2 = 1.0 - ev.a[i] * ev.a[i];
      const double dlogp_du = 2.0 * ev.a[i] * one_m_a2 / (one_m_a2 + kTanhEps);
      const double dL_du = a * dlogp_du - d_in[2 + i] * one_m_a2;
      d_out[i] = dL_du;
      d_out[2 + i] = ev.clamped[i] ? 0.0 : dL_du * ev.sigma[i] * eps[j][i] - a;
    }
    backward(policy, ev.trace, d_out, g);
  }
  g.scale(1.0 / static_cast<double>(batch.size()));
  return g;
}

double SacAgent::temperature_loss(
    const std::vector<Transition>& batch,
    const std::vector<std::array<double, 2>>& eps) const {
  const double a = alpha();
  double loss = 0.0;
  for (std::size_t j = 0; j < batch.size(); ++j) {
    const auto ev = eval_policy(policy, batch[j].s, eps[j]);
    loss += -a * (ev.log_prob + cfg.entropy_target);
  }
  return loss / static_cast<double>(batch.size());
}

double SacAgent::temperature_loss_grad(
    const std::vector<Transition>& batch,
    const std::vector<std::array<double, 2>>& eps) const {
  // d/d(log alpha) of the temperature loss; log-prob terms are constants here.
  return temperature_loss(batch, eps);
}

SacAgent::Losses SacAgent::update(const ReplayBuffer& buffer, std::mt19937_64& rng) {
  if (buffer.size() < static_cast<std::size_t>(cfg.batch))
    throw std::invalid_argument("SacAgent::update: buffer smaller than batch");
  const auto batch = gather(buffer, buffer.sample_indices(cfg.batch, rng));

  std::normal_distribution<double> n01(0.0, 1.0);
  std::vector<std::array<double, 2>> eps_next(batch.size()), eps(batch.size());
  for (auto& e : eps_next) e = {n01(rng), n01(rng)};
  for (auto& e : eps) e = {n01(rng), n01(rng)};

  Losses out;
  const auto targets = critic_targets(batch, eps_next);
  out.q1 = critic_loss(batch, targets, 1);
  const MlpGrad g1 = critic_loss_grad(batch, targets, 1);
  opt_q1.step(q1, g1, cfg.lr_q);
  if (cfg.twin_critics) {
    out.q2 = critic_loss(batch, targets, 2);
    const MlpGrad g2 = critic_loss_grad(batch, targets, 2);
    opt_q2.step(q2, g2, cfg.lr_q);
  }

  out.pi = policy_loss(batch, eps);
  const MlpGrad gp = policy_loss_grad(batch, eps);
  opt_pi.step(policy, gp, cfg.lr_pi);

  out.alpha = temperature_loss(batch, eps);
  opt_alpha.step(log_alpha, temperature_loss_grad(batch, eps), cfg.lr_alpha);
  out.temperature = alpha();

  soft_update(qt1, q1, cfg.tau);
  if (cfg.twin_critics) soft_update(qt2, q2, cfg.tau);
  return out;
}

void save_checkpoint(std::ostream& out, const SacAgent& agent,
                     const std::mt19937_64& rng) {
  out << "lfuav-checkpoint 1 sac\n";
  write_mlp(out, agent.policy);
  write_mlp(out, agent.q1);
  write_mlp(out, agent.q2);
  write_mlp(out, agent.qt1);
  write_mlp(out, agent.qt2);
  wd(out, agent.log_alpha);
  out << '\n';
  write_adam(out, agent.opt_q1);
  write_adam(out, agent.opt_q2);
  write_adam(out, agent.opt_pi);
  out << agent.opt_alpha.t << ' ';
  wd(out, agent.opt_alpha.m);
  wd(out, agent.opt_alpha.v);
  out << '\n';
  out << rng << '\n';
}

void load_checkpoint(std::istream& in, SacAgent& agent, std::mt19937_64& rng) {
  std::string magic, kind;
  int version;
  in >> magic >> version >> kind;
  if (magic != "lfuav-checkpoint" || version != 1 || kind != "sac")
    throw std::runtime_error("checkpoint: bad header");
  read_mlp(in, agent.policy);
  read_mlp(in, agent.q1);
  read_mlp(in, agent.q2);
  read_mlp(in, agent.qt1);
  read_mlp(in, agent.qt2);
  rd(in, agent.log_alpha);
  read_adam(in, agent.opt_q1);
  read_adam(in, agent.opt_q2);
  read_adam(in, agent.opt_pi);
  in >> agent.opt_alpha.t;
  rd(in, agent.opt_alpha.m);
  rd(in, agent.opt_alpha.v);
  in >> rng;
  if (!in) throw std::runtime_error("checkpoint: truncated");
}

}  // namespace lfuav
