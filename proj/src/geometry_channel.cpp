#include "lfuav/geometry_channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lfuav {

double distance(const Position3D& p, const Position3D& q) {
  return std::hypot(p.x - q.x, p.y - q.y, p.z - q.z);
}

double path_loss_a2g_db(double d_m, double h_rel_m, double f_hz,
                        const AirGroundParams& params) {
  if (!(d_m > 0.0) || !std::isfinite(d_m) || !std::isfinite(h_rel_m))
    throw std::invalid_argument("path_loss_a2g_db: d must be positive and finite");
  if (h_rel_m < 0.0 || h_rel_m > d_m)
    throw std::invalid_argument("path_loss_a2g_db: need 0 <= h_rel <= d");
  if (!(f_hz > 0.0)) throw std::invalid_argument("path_loss_a2g_db: f must be positive");

  const double theta_deg =
      std::asin(h_rel_m / d_m) * 180.0 / std::numbers::pi;
  const double excess = (params.eta_los_db - params.eta_nlos_db) /
                        (1.0 + params.a * std::exp(-params.b * (theta_deg - params.a)));
  const double fspl =
      20.0 * std::log10(4.0 * std::numbers::pi * f_hz * d_m / kSpeedOfLight);
  return excess + fspl + params.eta_nlos_db;
}

double path_loss_ground_db(double d_m, double f_hz, const AirGroundParams& params) {
  return path_loss_a2g_db(d_m, 0.0, f_hz, params);
}

double path_loss_log_distance_db(double d_m, double f_hz, double exponent,
                                 double d_ref_m) {
  if (!(d_m > 0.0) || !(d_ref_m > 0.0) || !(f_hz > 0.0))
    throw std::invalid_argument("path_loss_log_distance_db: bad arguments");
  const double pl_ref =
      20.0 * std::log10(4.0 * std::numbers::pi * f_hz * d_ref_m / kSpeedOfLight);
  return pl_ref + 10.0 * exponent * std::log10(d_m / d_ref_m);
}

double average_snr(double pt_w, double n0_w, double pl_db) {
  if (!(pt_w > 0.0) || !(n0_w > 0.0))
    throw std::invalid_argument("average_snr: powers must be positive");
  return pt_w / (n0_w * std::pow(10.0, pl_db / 10.0));
}

LinkBudget link_budget(const NodeLayout& layout, const RadioConfig& radio,
                       const AirGroundParams& a2g, std::size_t user_index,
                       const GroundPathModel& ground) {
  if (user_index >= layout.users.size())
    throw std::invalid_argument("link_budget: user index out of range");
  if (user_index >= radio.carrier_hz.size())
    throw std::invalid_argument("link_budget: no carrier for user");
  const double f = radio.carrier_hz[user_index];
  const Position3D& user = layout.users[user_index];

  const double d_sr = distance(layout.bs, layout.uav);
  const double d_sd = distance(layout.bs, user);
  const double d_rd = distance(layout.uav, user);

  const double pl0 =
      path_loss_a2g_db(d_sr, std::abs(layout.uav.z - layout.bs.z), f, a2g);
  const double pl1 = ground.log_distance
                         ? path_loss_log_distance_db(d_sd, f, ground.exponent)
                         : path_loss_ground_db(d_sd, f, a2g);
  const double pl2 =
      path_loss_a2g_db(d_rd, std::abs(layout.uav.z - user.z), f, a2g);

  LinkBudget b;
  b.g0 = average_snr(radio.pt_w, radio.n0_w, pl0);
  b.g1 = average_snr(radio.pt_w, radio.n0_w, pl1);
  b.g2 = average_snr(radio.pt_w, radio.n0_w, pl2);
  return b;
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream) {
  // splitmix64 over (master, stream)
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SnrSampler::SnrSampler(double m, std::uint64_t seed)
    : m_(m), rng_(seed), dist_(m, 1.0) {
  if (!(m >= 0.5) || !std::isfinite(m))
    throw std::invalid_argument("SnrSampler: m must be >= 0.5 and finite");
}

double SnrSampler::draw(double gamma_bar) {
  if (!(gamma_bar > 0.0))
    throw std::invalid_argument("SnrSampler::draw: gamma_bar must be positive");
  // Gamma(m, scale 1) scaled to mean gamma_bar
  return dist_(rng_) * gamma_bar / m_;
}

}  // namespace lfuav
