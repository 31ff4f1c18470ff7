#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "lfuav/geometry_channel.hpp"
#include "lfuav/quadrature.hpp"
#include "lfuav/rate_distortion.hpp"

namespace lfuav {

struct OutageEstimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for deterministic quadrature
  std::string method;      // "closed_form" | "monte_carlo" | "decomposition"
  double quad_error = 0.0;
  bool converged = true;
};

// The four contributions of the case decomposition, keyed by which relay
// links fall below the lossless-rate boundary (gamma < 2^{1/kappa} - 1).
struct CaseDecomposition {
  double relay_clean = 0.0;  // rho1 = 0, rho2 = 0
  double rd_noisy = 0.0;     // rho1 = 0, rho2 > 0
  double sr_noisy = 0.0;     // rho1 > 0, rho2 = 0
  double both_noisy = 0.0;   // rho1 > 0, rho2 > 0
  std::array<double, 4> case_probability = {0, 0, 0, 0};  // unconditioned masses
  double total() const { return relay_clean + rd_noisy + sr_noisy + both_noisy; }
};

// Quadrature evaluation of the analytical outage probability, assembled
// from the case partition (see docs/derivation.md for why the constant
// term differs from the literal transcription; literal_constant_term
// evaluates the transcribed form for comparison).
OutageEstimate outage_closed_form(const LinkBudget& budget, const DistortionSpec& spec,
                                  double m, const QuadratureConfig& quad = {},
                                  bool literal_constant_term = false);

CaseDecomposition outage_case_decomposition(const LinkBudget& budget,
                                            const DistortionSpec& spec, double m,
                                            const QuadratureConfig& quad = {});

// Independent Monte Carlo oracle: samples fading triples and applies the
// region-membership test directly; shares only the binary-entropy
// primitives with the closed form. The estimate depends on the worker
// count only through substream assignment; for a fixed (seed, workers)
// pair the merged result is identical whether or not threads are used.
OutageEstimate outage_monte_carlo(const LinkBudget& budget, const DistortionSpec& spec,
                                  double m, std::size_t n, std::uint64_t seed,
                                  int workers = 8, bool threaded = true);

struct SystemOutage {
  std::vector<OutageEstimate> per_user;
  double sum = 0.0;
};

SystemOutage system_outage(const NodeLayout& layout, const RadioConfig& radio,
                           const AirGroundParams& a2g,
                           const std::vector<DistortionSpec>& specs, double m,
                           const QuadratureConfig& quad = {},
                           const GroundPathModel& ground = {});

}  // namespace lfuav
