#pragma once

namespace lfuav {

// Normalized upper incomplete gamma function Q(m, x) = Gamma(m, x)/Gamma(m),
// i.e. Pr{Gamma(shape m, scale 1) > x}. Integer shapes use the finite-sum
// closed form; otherwise series/continued-fraction evaluation.
double upper_gamma_ratio(double m, double x);

// Generic series/continued-fraction path, exposed so the integer closed
// form can be cross-checked against it.
double upper_gamma_ratio_generic(double m, double x);

}  // namespace lfuav
