#include "lfuav/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <utility>

namespace lfuav {

UavRelayEnv::UavRelayEnv(EnvConfig cfg, int num_users, OutageFn outage_sum)
    : cfg_(cfg), num_users_(num_users), outage_(std::move(outage_sum)) {
  if (!(cfg_.max_step > 0.0) || cfg_.horizon < 1 || !(cfg_.mu > 0.0))
    throw std::invalid_argument("UavRelayEnv: bad config");
}

EnvState UavRelayEnv::reset(std::optional<EnvState> start) {
  EnvState s = start.value_or(EnvState{0.0, 0.0});
  if (!cfg_.area.contains(s.n1, s.n2))
    throw std::invalid_argument("UavRelayEnv::reset: start outside area");
  state_ = s;
  step_index_ = 0;
  return state_;
}

double UavRelayEnv::reward_at(const EnvState& s) const {
  const double sum = outage_(s.n1, s.n2);
  return static_cast<double>(num_users_) / (cfg_.mu * std::max(sum, cfg_.eps_guard));
}

StepResult UavRelayEnv::step(const EnvAction& action) {
  const double d1 = std::clamp(action.dn1, -cfg_.max_step, cfg_.max_step);
  const double d2 = std::clamp(action.dn2, -cfg_.max_step, cfg_.max_step);

  StepResult r;
  r.next.n1 = std::clamp(state_.n1 + d1, cfg_.area.x0, cfg_.area.x1);
  r.next.n2 = std::clamp(state_.n2 + d2, cfg_.area.y0, cfg_.area.y1);
  r.outage_sum = outage_(r.next.n1, r.next.n2);
  r.reward = static_cast<double>(num_users_) /
             (cfg_.mu * std::max(r.outage_sum, cfg_.eps_guard));
  state_ = r.next;
  ++step_index_;
  r.done = step_index_ >= cfg_.horizon;
  return r;
}

std::array<double, 2> normalize_state(const EnvState& s, const EnvConfig& cfg) {
  const auto& a = cfg.area;
  return {2.0 * (s.n1 - a.x0) / (a.x1 - a.x0) - 1.0,
          2.0 * (s.n2 - a.y0) / (a.y1 - a.y0) - 1.0};
}

EnvState denormalize_state(const std::array<double, 2>& u, const EnvConfig& cfg) {
  const auto& a = cfg.area;
  return {a.x0 + (u[0] + 1.0) * 0.5 * (a.x1 - a.x0),
          a.y0 + (u[1] + 1.0) * 0.5 * (a.y1 - a.y0)};
}

OutageModel::OutageModel(NodeLayout layout, RadioConfig radio, AirGroundParams a2g,
                         std::vector<DistortionSpec> specs, double m,
                         QuadratureConfig quad, double altitude,
                         GroundPathModel ground)
    : layout_(std::move(layout)),
      radio_(std::move(radio)),
      a2g_(a2g),
      specs_(std::move(specs)),
      m_(m),
      quad_(quad),
      altitude_(altitude),
      ground_(ground) {}

SystemOutage OutageModel::evaluate(double n1, double n2) const {
  NodeLayout l = layout_;
  l.uav = {n1, n2, altitude_};
  return system_outage(l, radio_, a2g_, specs_, m_, quad_, ground_);
}

OutageGrid OutageGrid::build(const OutageModel& model, const AreaBox& area, int n,
                             int threads) {
  if (n < 2) throw std::invalid_argument("OutageGrid: resolution must be >= 2");
  OutageGrid g;
  g.area_ = area;
  g.n_ = n;
  g.values_.assign(static_cast<std::size_t>(n) * n, 0.0);

  if (threads <= 0)
    threads = std::max(1u, std::thread::hardware_concurrency());

  auto rows = [&](int t) {
    for (int i = t; i < n; i += threads) {
      const double y = area.y0 + (area.y1 - area.y0) * i / (n - 1);
      for (int j = 0; j < n; ++j) {
        const double x = area.x0 + (area.x1 - area.x0) * j / (n - 1);
        g.values_[static_cast<std::size_t>(i) * n + j] = model.sum(x, y);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(rows, t);
  for (auto& t : pool) t.join();
  return g;
}

double OutageGrid::operator()(double n1, double n2) const {
  const double fx = std::clamp((n1 - area_.x0) / (area_.x1 - area_.x0), 0.0, 1.0) *
                    (n_ - 1);
  const double fy = std::clamp((n2 - area_.y0) / (area_.y1 - area_.y0), 0.0, 1.0) *
                    (n_ - 1);
  const int j = std::min(static_cast<int>(fx), n_ - 2);
  const int i = std::min(static_cast<int>(fy), n_ - 2);
  const double u = fx - j;
  const double v = fy - i;
  const auto at = [&](int r, int c) {
    return values_[static_cast<std::size_t>(r) * n_ + c];
  };
  return (1 - u) * (1 - v) * at(i, j) + u * (1 - v) * at(i, j + 1) +
         (1 - u) * v * at(i + 1, j) + u * v * at(i + 1, j + 1);
}

}  // namespace lfuav
