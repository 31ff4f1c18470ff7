#pragma once

#include <array>

namespace lfuav {

// Per-user distortion requirement and rate-scaling factors kappa_i for the
// S-R, S-D and R-D links (kappa = bandwidth over end-to-end source rate;
// all default to 1, matching the analysis that drops the ratio).
struct DistortionSpec {
  double d = 0.1;                          // acceptable Hamming distortion, [0, 0.5]
  std::array<double, 3> kappa = {1.0, 1.0, 1.0};
};

struct RateTriple {
  double r0 = 0.0;  // S-R, bits per source symbol
  double r1 = 0.0;  // S-D
  double r2 = 0.0;  // R-D
};

struct CrossoverPair {
  double rho1 = 0.0;  // S-R equivalent BSC crossover
  double rho2 = 0.0;  // R-D
};

double binary_entropy(double p);

// Unique p in [0, 0.5] with H_b(p) = h, bisection to 1e-12.
double binary_entropy_inv(double h);

// Crossover of two cascaded BSCs: a(1-b) + b(1-a).
double binary_convolution(double a, double b);

// rho = H_b^{-1}(1 - kappa*log2(1+gamma)), clamped to 0 once the link rate
// supports a lossless description.
double crossover_from_snr(double gamma, double kappa);

// Instantaneous S-D SNR below which the user is in outage, given the relay
// path crossovers: 2^{(H_b(rho1*rho2*D) - H_b(D))/kappa1} - 1.
double outage_threshold_snr(const CrossoverPair& rho, const DistortionSpec& spec);

// True iff the rate triple supports reconstruction distortion <= D.
bool in_admissible_region(const RateTriple& rates, const DistortionSpec& spec);

}  // namespace lfuav
