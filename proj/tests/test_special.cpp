#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "lfuav/special.hpp"

using namespace lfuav;

TEST_CASE("integer shapes reduce to the exponential-sum form") {
  // m = 1: plain exponential
  CHECK(upper_gamma_ratio(1.0, 0.7) == doctest::Approx(std::exp(-0.7)).epsilon(1e-14));
  // m = 2, x = 1 pinned
  CHECK(upper_gamma_ratio(2.0, 1.0) ==
        doctest::Approx(0.7357588823428846).epsilon(1e-13));
  // m = 3 hand-expanded
  const double x = 2.5;
  CHECK(upper_gamma_ratio(3.0, x) ==
        doctest::Approx(std::exp(-x) * (1.0 + x + x * x / 2.0)).epsilon(1e-13));
}

TEST_CASE("limits and monotonicity") {
  CHECK(upper_gamma_ratio(2.0, 0.0) == doctest::Approx(1.0));
  CHECK(upper_gamma_ratio(2.0, 500.0) == doctest::Approx(0.0).epsilon(1e-12));
  double prev = 1.0;
  for (double x = 0.1; x < 20.0; x += 0.3) {
    const double q = upper_gamma_ratio(2.0, x);
    CHECK(q < prev);
    CHECK(q >= 0.0);
    prev = q;
  }
}

TEST_CASE("generic path agrees with the integer closed form") {
  for (double m : {1.0, 2.0, 3.0, 5.0, 10.0}) {
    for (double x : {0.01, 0.5, 1.0, 3.0, 8.0, 25.0}) {
      CHECK(upper_gamma_ratio_generic(m, x) ==
            doctest::Approx(upper_gamma_ratio(m, x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("half-integer shape via the error function") {
  // Q(1/2, x) = erfc(sqrt(x))
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    CHECK(upper_gamma_ratio(0.5, x) ==
          doctest::Approx(std::erfc(std::sqrt(x))).epsilon(1e-10));
  }
}

TEST_CASE("recurrence Q(m+1,x) = Q(m,x) + x^m e^{-x} / Gamma(m+1)") {
  for (double m : {0.7, 1.3, 2.0, 4.6}) {
    for (double x : {0.3, 1.7, 6.0}) {
      const double lhs = upper_gamma_ratio(m + 1.0, x);
      const double rhs = upper_gamma_ratio(m, x) +
                         std::exp(m * std::log(x) - x - std::lgamma(m + 1.0));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}
