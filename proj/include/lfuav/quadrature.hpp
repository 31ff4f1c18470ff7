#pragma once

#include <functional>

namespace lfuav {

struct QuadratureConfig {
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  int max_subdivisions = 400;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // achieved error estimate
  bool converged = true;
};

// Adaptive Gauss-Kronrod (15-point) integration of f over [a, b].
// Subdivides the interval with the largest error estimate until the global
// estimate satisfies max(abs_tol, rel_tol*|I|) or the subdivision budget
// runs out (result then carries converged = false).
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureConfig& cfg = {});

}  // namespace lfuav
