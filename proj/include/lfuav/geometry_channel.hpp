#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace lfuav {

inline constexpr double kSpeedOfLight = 2.99792458e8;  // m/s

struct Position3D {
  double x = 0.0;  // m
  double y = 0.0;  // m
  double z = 0.0;  // m, altitude, >= 0
};

struct NodeLayout {
  Position3D bs;
  Position3D uav;
  std::vector<Position3D> users;
};

// Sigmoid LoS-probability fit parameters of the A2G model. The elevation
// angle entering the sigmoid is in DEGREES; the published fits for
// a = 4.88, b = 0.43 assume degrees (with radians the sigmoid saturates
// for every realistic elevation).
struct AirGroundParams {
  double a = 4.88;
  double b = 0.43;
  double eta_los_db = 0.1;
  double eta_nlos_db = 21.0;
};

// n0_w is the TOTAL noise power in watts, not a per-Hz density: the SNR
// definition divides by it directly with no bandwidth factor.
struct RadioConfig {
  double pt_w = 0.5;
  double n0_w = 3.9811e-14;
  std::vector<double> carrier_hz = {2.0e9, 1.985e9};
};

struct FadingSpec {
  double m = 2.0;  // Nakagami shape, >= 0.5
};

// Average linear SNRs of the three links of one user.
struct LinkBudget {
  double g0 = 0.0;  // S-R
  double g1 = 0.0;  // S-D
  double g2 = 0.0;  // R-D
};

double distance(const Position3D& p, const Position3D& q);

// A2G path loss in dB at link distance d_m, relative height h_rel_m and
// carrier f_hz. Elevation theta = arcsin(h_rel/d).
double path_loss_a2g_db(double d_m, double h_rel_m, double f_hz,
                        const AirGroundParams& params);

// Ground (S-D) model: the A2G formula evaluated at zero elevation.
double path_loss_ground_db(double d_m, double f_hz, const AirGroundParams& params);

// Alternative ground model: log-distance with configurable exponent,
// anchored at the free-space loss of d_ref.
double path_loss_log_distance_db(double d_m, double f_hz, double exponent,
                                 double d_ref_m = 1.0);

double average_snr(double pt_w, double n0_w, double pl_db);

// S-D path-loss choice: the default reuses the A2G formula at zero
// elevation; the alternative is a log-distance model with the given exponent.
struct GroundPathModel {
  bool log_distance = false;
  double exponent = 2.0;
};

LinkBudget link_budget(const NodeLayout& layout, const RadioConfig& radio,
                       const AirGroundParams& a2g, std::size_t user_index,
                       const GroundPathModel& ground = {});

// Derives an independent substream seed from a master seed. Parallel
// workers each get their own stream; streams are never shared.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t stream);

// Gamma(shape m, mean gamma_bar) sampler owning its stream.
class SnrSampler {
 public:
  SnrSampler(double m, std::uint64_t seed);
  double draw(double gamma_bar);
  double shape() const { return m_; }

 private:
  double m_;
  std::mt19937_64 rng_;
  std::gamma_distribution<double> dist_;
};

}  // namespace lfuav
