#include <doctest.h>

#include <cmath>

#include "lfuav/rate_distortion.hpp"

using namespace lfuav;

TEST_CASE("binary entropy endpoints and pinned value") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(binary_entropy(0.25) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-13));
  CHECK(binary_entropy(0.25) == binary_entropy(0.75));
}

TEST_CASE("binary entropy is concave and peaks at one half") {
  double prev = binary_entropy(0.0);
  for (double p = 0.02; p <= 0.5 + 1e-12; p += 0.02) {
    const double cur = binary_entropy(p);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("entropy inverse round trips") {
  for (double p : {0.001, 0.02, 0.1, 0.25, 0.4, 0.499}) {
    CHECK(binary_entropy_inv(binary_entropy(p)) ==
          doctest::Approx(p).epsilon(1e-9));
  }
  for (double h : {0.0, 0.1, 0.5, 0.9, 1.0}) {
    CHECK(binary_entropy(binary_entropy_inv(h)) ==
          doctest::Approx(h).epsilon(1e-10));
  }
  CHECK(binary_entropy_inv(0.0) == doctest::Approx(0.0));
  CHECK(binary_entropy_inv(1.0) == doctest::Approx(0.5));
}

TEST_CASE("binary convolution identities") {
  CHECK(binary_convolution(0.0, 0.3) == doctest::Approx(0.3));
  CHECK(binary_convolution(0.5, 0.3) == doctest::Approx(0.5));
  CHECK(binary_convolution(0.2, 0.3) == binary_convolution(0.3, 0.2));
  CHECK(binary_convolution(0.1, 0.2) ==
        doctest::Approx(0.1 * 0.8 + 0.2 * 0.9).epsilon(1e-14));
  // convolution only degrades (moves toward 1/2)
  CHECK(binary_convolution(0.1, 0.2) > 0.2);
  CHECK(binary_convolution(0.1, 0.2) < 0.5);
}

TEST_CASE("crossover from snr, pinned value and clamping") {
  CHECK(crossover_from_snr(0.5, 1.0) ==
        doctest::Approx(0.08368652008197709).epsilon(1e-10));
  // Rate >= 1 bit means a lossless description fits: crossover 0.
  CHECK(crossover_from_snr(1.0, 1.0) == 0.0);
  CHECK(crossover_from_snr(100.0, 1.0) == 0.0);
  // gamma = 0 carries nothing
  CHECK(crossover_from_snr(0.0, 1.0) == doctest::Approx(0.5));
  // monotone decreasing in gamma
  double prev = 0.5;
  for (double g = 0.05; g < 1.0; g += 0.05) {
    const double rho = crossover_from_snr(g, 1.0);
    CHECK(rho <= prev + 1e-12);
    prev = rho;
  }
}

TEST_CASE("outage threshold snr") {
  DistortionSpec spec;
  spec.d = 0.1;
  // pinned: rho1 = 0.1, rho2 = 0
  CHECK(outage_threshold_snr({0.1, 0.0}, spec) ==
        doctest::Approx(0.15755556878857507).epsilon(1e-10));
  // clean relay path: direct link is never needed
  CHECK(outage_threshold_snr({0.0, 0.0}, spec) == doctest::Approx(0.0));
  // effective crossover within D: still zero threshold
  CrossoverPair tiny{0.01, 0.0};
  CHECK(binary_convolution(binary_convolution(0.01, 0.0), 0.1) >= 0.1);
  CHECK(outage_threshold_snr(tiny, spec) >= 0.0);
  // worse relay links demand more of the direct link
  const double t1 = outage_threshold_snr({0.05, 0.0}, spec);
  const double t2 = outage_threshold_snr({0.15, 0.0}, spec);
  CHECK(t2 > t1);
}

TEST_CASE("admissible region membership") {
  DistortionSpec spec;
  spec.d = 0.1;
  const double hd = binary_entropy(0.1);

  // Lossless relay description, no direct rate needed.
  CHECK(in_admissible_region({1.0, 0.0, 1.0}, spec));
  // No rate anywhere, D < 0.5: not admissible.
  CHECK_FALSE(in_admissible_region({0.0, 0.0, 0.0}, spec));
  // Boundary: r0 = 1 - Hb(0.1), r2 = 1, so rho1 = 0.1, rho2 = 0 and the
  // direct link must carry Hb(0.1*D') - Hb(D) with the convolution.
  RateTriple r;
  r.r0 = 1.0 - binary_entropy(0.1);
  r.r2 = 1.0;
  r.r1 = binary_entropy(binary_convolution(0.1, 0.1)) - hd;
  RateTriple above = r, below = r;
  above.r1 += 1e-6;
  below.r1 -= 1e-6;
  CHECK(in_admissible_region(above, spec));
  CHECK_FALSE(in_admissible_region(below, spec));

  // Monotone: adding rate never leaves the region.
  CHECK(in_admissible_region({r.r0 + 0.2, r.r1 + 0.2, r.r2 + 0.2}, spec));

  // D = 0.5 admits everything.
  DistortionSpec loose;
  loose.d = 0.5;
  CHECK(in_admissible_region({0.0, 0.0, 0.0}, loose));
}

TEST_CASE("kappa scales the threshold rate") {
  DistortionSpec spec;
  spec.d = 0.1;
  spec.kappa = {1.0, 2.0, 1.0};
  // doubling kappa1 halves the required direct-link SNR in the exponent
  const double t = outage_threshold_snr({0.1, 0.0}, spec);
  DistortionSpec base;
  base.d = 0.1;
  const double t0 = outage_threshold_snr({0.1, 0.0}, base);
  CHECK(std::log2(1.0 + t) == doctest::Approx(0.5 * std::log2(1.0 + t0)).epsilon(1e-10));
}
