#include "lfuav/rate_distortion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lfuav {

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binary_entropy: p outside [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double binary_entropy_inv(double h) {
  if (!(h >= 0.0 && h <= 1.0))
    throw std::invalid_argument("binary_entropy_inv: h outside [0,1]");
  if (h == 0.0) return 0.0;
  if (h == 1.0) return 0.5;
  // Bisection on [0, 0.5]; H_b' is unbounded at 0, so derivative methods
  // are fragile at that endpoint.
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < h)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double binary_convolution(double a, double b) {
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0))
    throw std::invalid_argument("binary_convolution: arguments outside [0,1]");
  return a * (1.0 - b) + b * (1.0 - a);
}

double crossover_from_snr(double gamma, double kappa) {
  if (!(gamma >= 0.0) || !(kappa > 0.0))
    throw std::invalid_argument("crossover_from_snr: bad arguments");
  const double rate = kappa * std::log2(1.0 + gamma);
  if (rate >= 1.0) return 0.0;
  return binary_entropy_inv(1.0 - rate);
}

double outage_threshold_snr(const CrossoverPair& rho, const DistortionSpec& spec) {
  const double eff = binary_convolution(binary_convolution(rho.rho1, rho.rho2), spec.d);
  const double gap = binary_entropy(eff) - binary_entropy(spec.d);
  return std::exp2(std::max(gap, 0.0) / spec.kappa[1]) - 1.0;
}

bool in_admissible_region(const RateTriple& rates, const DistortionSpec& spec) {
  // Minimal feasible crossovers given R0 and R2; H_b(x*y*D) is nondecreasing
  // in each argument on [0, 0.5], so minimal rho is optimal.
  const double rho1 = binary_entropy_inv(std::clamp(1.0 - rates.r0, 0.0, 1.0));
  const double rho2 = binary_entropy_inv(std::clamp(1.0 - rates.r2, 0.0, 1.0));
  const double eff = binary_convolution(binary_convolution(rho1, rho2), spec.d);
  const double required = binary_entropy(eff) - binary_entropy(spec.d);
  return rates.r1 >= required;
}

}  // namespace lfuav
