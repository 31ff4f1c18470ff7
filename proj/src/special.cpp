#include "lfuav/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lfuav {
namespace {

// Regularized lower incomplete gamma by power series, x < m+1.
double gamma_p_series(double m, double x) {
  double ap = m;
  double del = 1.0 / m;
  double sum = del;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * std::numeric_limits<double>::epsilon())
      break;
  }
  return sum * std::exp(-x + m * std::log(x) - std::lgamma(m));
}

// Regularized upper incomplete gamma by Lentz continued fraction, x >= m+1.
double gamma_q_cf(double m, double x) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  double b = x + 1.0 - m;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - m);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= eps) break;
  }
  return std::exp(-x + m * std::log(x) - std::lgamma(m)) * h;
}

}  // namespace

double upper_gamma_ratio_generic(double m, double x) {
  if (!(m > 0.0) || !(x >= 0.0))
    throw std::invalid_argument("upper_gamma_ratio: need m > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < m + 1.0) return 1.0 - gamma_p_series(m, x);
  return gamma_q_cf(m, x);
}

double upper_gamma_ratio(double m, double x) {
  if (!(m >= 0.5) || !(x >= 0.0))
    throw std::invalid_argument("upper_gamma_ratio: need m >= 0.5, x >= 0");
  const double mr = std::round(m);
  if (std::abs(m - mr) < 1e-12 && mr >= 1.0 && mr <= 64.0) {
    // e^{-x} * sum_{j<m} x^j / j!
    const int n = static_cast<int>(mr);
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < n; ++j) {
      term *= x / j;
      sum += term;
    }
    return std::exp(-x) * sum;
  }
  return upper_gamma_ratio_generic(m, x);
}

}  // namespace lfuav
