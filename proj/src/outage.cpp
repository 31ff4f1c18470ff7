#include "lfuav/outage.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "lfuav/special.hpp"

namespace lfuav {
namespace {

// Gamma(shape m, mean gbar) density.
double snr_pdf(double g, double gbar, double m) {
  if (g <= 0.0) return 0.0;
  return std::exp(m * std::log(m) + (m - 1.0) * std::log(g) - m * std::log(gbar) -
                  std::lgamma(m) - m * g / gbar);
}

// Memoizing wrapper for phi(gamma) = H_b^{-1}(1 - kappa*log2(1+gamma)).
// The double integral revisits the same inner quadrature nodes for every
// outer node, and the bisection dominates the integrand cost.
class PhiCache {
 public:
  explicit PhiCache(double kappa) : kappa_(kappa) {}
  double operator()(double gamma) {
    const std::uint64_t key = std::bit_cast<std::uint64_t>(gamma);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    const double v = crossover_from_snr(gamma, kappa_);
    cache_.emplace(key, v);
    return v;
  }

 private:
  double kappa_;
  std::unordered_map<std::uint64_t, double> cache_;
};

struct ClosedFormParts {
  double q0, q2;           // Pr{gamma_i above its lossless boundary}
  double i_rd;             // integral, rho1 = 0, rho2 > 0 (no-outage mass / q0)
  double i_sr;             // integral, rho1 > 0, rho2 = 0 (no-outage mass / q2)
  double i_both;           // double integral, both crossovers positive
  double p_rd, p_sr, p_both;  // plain case masses of the integration ranges
  double err;
  bool converged;
};

ClosedFormParts closed_form_parts(const LinkBudget& budget, const DistortionSpec& spec,
                                  double m, const QuadratureConfig& quad) {
  if (!(budget.g0 > 0.0 && budget.g1 > 0.0 && budget.g2 > 0.0))
    throw std::invalid_argument("outage: average SNRs must be positive");
  if (!(m >= 0.5)) throw std::invalid_argument("outage: m must be >= 0.5");

  const double t0 = std::exp2(1.0 / spec.kappa[0]) - 1.0;
  const double t2 = std::exp2(1.0 / spec.kappa[2]) - 1.0;

  ClosedFormParts parts{};
  parts.q0 = upper_gamma_ratio(m, m * t0 / budget.g0);
  parts.q2 = upper_gamma_ratio(m, m * t2 / budget.g2);
  parts.p_rd = 1.0 - parts.q2;
  parts.p_sr = 1.0 - parts.q0;
  parts.p_both = parts.p_sr * parts.p_rd;

  PhiCache phi0(spec.kappa[0]);
  PhiCache phi2(spec.kappa[2]);

  auto survive = [&](double rho1, double rho2) {
    const double t = outage_threshold_snr({rho1, rho2}, spec);
    return upper_gamma_ratio(m, m * t / budget.g1);
  };

  double err = 0.0;
  bool ok = true;

  auto r_rd = integrate_adaptive(
      [&](double g2) { return snr_pdf(g2, budget.g2, m) * survive(0.0, phi2(g2)); },
      0.0, t2, quad);
  auto r_sr = integrate_adaptive(
      [&](double g0) { return snr_pdf(g0, budget.g0, m) * survive(phi0(g0), 0.0); },
      0.0, t0, quad);
  err += r_rd.error + r_sr.error;
  ok = ok && r_rd.converged && r_sr.converged;

  // Tensor-product double integral: adaptive in gamma0, inner adaptive in
  // gamma2 at a tightened tolerance so the outer error estimate stays honest.
  QuadratureConfig inner = quad;
  inner.abs_tol = quad.abs_tol * 0.1;
  inner.rel_tol = quad.rel_tol * 0.1;
  auto r_both = integrate_adaptive(
      [&](double g0) {
        const double rho1 = phi0(g0);
        auto in = integrate_adaptive(
            [&](double g2) {
              return snr_pdf(g2, budget.g2, m) * survive(rho1, phi2(g2));
            },
            0.0, t2, inner);
        return snr_pdf(g0, budget.g0, m) * in.value;
      },
      0.0, t0, quad);
  err += r_both.error;
  ok = ok && r_both.converged;

  parts.i_rd = r_rd.value;
  parts.i_sr = r_sr.value;
  parts.i_both = r_both.value;
  parts.err = err;
  parts.converged = ok;
  return parts;
}

}  // namespace

OutageEstimate outage_closed_form(const LinkBudget& budget, const DistortionSpec& spec,
                                  double m, const QuadratureConfig& quad,
                                  bool literal_constant_term) {
  const auto p = closed_form_parts(budget, spec, m, quad);
  const double lead = literal_constant_term ? 1.0 + 2.0 * p.q0 * p.q2
                                            : 1.0 - p.q0 * p.q2;
  double v = lead - p.q0 * p.i_rd - p.q2 * p.i_sr - p.i_both;

  OutageEstimate est;
  est.method = "closed_form";
  est.quad_error = p.err;
  est.converged = p.converged;
  // Clamp only when the overshoot is within the quadrature tolerance.
  if (!literal_constant_term) {
    if (v < 0.0 && v > -10.0 * (p.err + 1e-14)) v = 0.0;
    if (v > 1.0 && v < 1.0 + 10.0 * (p.err + 1e-14)) v = 1.0;
  }
  est.value = v;
  return est;
}

CaseDecomposition outage_case_decomposition(const LinkBudget& budget,
                                            const DistortionSpec& spec, double m,
                                            const QuadratureConfig& quad) {
  const auto p = closed_form_parts(budget, spec, m, quad);
  CaseDecomposition d;
  d.case_probability = {p.q0 * p.q2, p.q0 * p.p_rd, p.p_sr * p.q2, p.p_both};
  d.relay_clean = 0.0;  // threshold is 0 when both crossovers vanish
  d.rd_noisy = p.q0 * (p.p_rd - p.i_rd);
  d.sr_noisy = p.q2 * (p.p_sr - p.i_sr);
  d.both_noisy = p.p_both - p.i_both;
  return d;
}

OutageEstimate outage_monte_carlo(const LinkBudget& budget, const DistortionSpec& spec,
                                  double m, std::size_t n, std::uint64_t seed,
                                  int workers, bool threaded) {
  if (n < 1) throw std::invalid_argument("outage_monte_carlo: n must be >= 1");
  if (workers < 1) workers = 1;
  if (static_cast<std::size_t>(workers) > n) workers = static_cast<int>(n);

  std::vector<std::size_t> hits(workers, 0);
  auto run_chunk = [&](int w) {
    const std::size_t lo = n * w / workers;
    const std::size_t hi = n * (w + 1) / workers;
    SnrSampler s(m, substream_seed(seed, static_cast<std::uint64_t>(w)));
    std::size_t count = 0;
    RateTriple r;
    for (std::size_t i = lo; i < hi; ++i) {
      const double g0 = s.draw(budget.g0);
      const double g1 = s.draw(budget.g1);
      const double g2 = s.draw(budget.g2);
      r.r0 = spec.kappa[0] * std::log2(1.0 + g0);
      r.r1 = spec.kappa[1] * std::log2(1.0 + g1);
      r.r2 = spec.kappa[2] * std::log2(1.0 + g2);
      if (!in_admissible_region(r, spec)) ++count;
    }
    hits[w] = count;
  };

  if (threaded && workers > 1) {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run_chunk, w);
    for (auto& t : pool) t.join();
  } else {
    for (int w = 0; w < workers; ++w) run_chunk(w);
  }

  std::size_t total = 0;
  for (auto h : hits) total += h;
  const double p = static_cast<double>(total) / static_cast<double>(n);

  OutageEstimate est;
  est.method = "monte_carlo";
  est.value = p;
  est.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  return est;
}

SystemOutage system_outage(const NodeLayout& layout, const RadioConfig& radio,
                           const AirGroundParams& a2g,
                           const std::vector<DistortionSpec>& specs, double m,
                           const QuadratureConfig& quad,
                           const GroundPathModel& ground) {
  if (specs.size() != layout.users.size())
    throw std::invalid_argument("system_outage: specs/users size mismatch");
  SystemOutage out;
  out.per_user.reserve(specs.size());
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const LinkBudget b = link_budget(layout, radio, a2g, k, ground);
    out.per_user.push_back(outage_closed_form(b, specs[k], m, quad));
    out.sum += out.per_user.back().value;
  }
  return out;
}

}  // namespace lfuav
