#include <doctest.h>

#include <cmath>
#include <random>

#include "lfuav/mlp.hpp"

using namespace lfuav;

namespace {
double loss_of(const Mlp& net, std::span<const double> x) {
  // scalar test loss: sum of squared outputs
  const auto y = net.forward(x);
  double s = 0.0;
  for (double v : y) s += v * v;
  return 0.5 * s;
}
}  // namespace

TEST_CASE("shapes and parameter indexing") {
  std::mt19937_64 rng(1);
  auto net = Mlp::make({3, 8, 8, 2}, rng);
  CHECK(net.input_size() == 3);
  CHECK(net.output_size() == 2);
  CHECK(net.num_layers() == 3);
  CHECK(net.param_count() == std::size_t(3 * 8 + 8 + 8 * 8 + 8 + 8 * 2 + 2));
  const auto y = net.forward(std::vector<double>{0.1, -0.2, 0.3});
  CHECK(y.size() == 2);
  // writing through param() changes the forward pass
  net.param(0) += 100.0;
  const auto y2 = net.forward(std::vector<double>{0.1, -0.2, 0.3});
  CHECK(y2[0] != y[0]);
}

TEST_CASE("initialization is seeded and bounded") {
  std::mt19937_64 a(7), b(7), c(8);
  auto n1 = Mlp::make({4, 16, 1}, a);
  auto n2 = Mlp::make({4, 16, 1}, b);
  auto n3 = Mlp::make({4, 16, 1}, c);
  bool same = true, differ = false;
  for (std::size_t i = 0; i < n1.param_count(); ++i) {
    same = same && n1.param(i) == n2.param(i);
    differ = differ || n1.param(i) != n3.param(i);
    CHECK(std::abs(n1.param(i)) <= 1.0);
  }
  CHECK(same);
  CHECK(differ);
}

TEST_CASE("forward trace reproduces forward") {
  std::mt19937_64 rng(3);
  auto net = Mlp::make({2, 6, 3}, rng);
  MlpTrace tr;
  const std::vector<double> x{0.4, -0.9};
  const auto y1 = forward_trace(net, x, tr);
  const auto y2 = net.forward(x);
  REQUIRE(y1.size() == y2.size());
  for (std::size_t i = 0; i < y1.size(); ++i) CHECK(y1[i] == y2[i]);
  CHECK(tr.acts.size() == 3);  // input + hidden + output
  CHECK(tr.acts[0][0] == 0.4);
  for (double v : tr.acts[1]) CHECK(v >= 0.0);  // post-ReLU
}

TEST_CASE("backward matches finite differences") {
  std::mt19937_64 rng(11);
  auto net = Mlp::make({3, 10, 7, 2}, rng);
  const std::vector<double> x{0.3, -0.5, 0.8};

  MlpTrace tr;
  const auto y = forward_trace(net, x, tr);
  auto grad = MlpGrad::zeros_like(net);
  std::vector<double> d_out(y.begin(), y.end());  // dL/dy for L = 0.5*sum y^2
  std::vector<double> d_in;
  backward(net, tr, d_out, grad, &d_in);

  const double h = 1e-5;
  // spot-check a spread of parameters in every layer
  for (std::size_t layer = 0; layer < net.num_layers(); ++layer) {
    for (std::size_t k : {std::size_t{0}, net.w[layer].size() / 2,
                          net.w[layer].size() - 1}) {
      const double keep = net.w[layer][k];
      net.w[layer][k] = keep + h;
      const double lp = loss_of(net, x);
      net.w[layer][k] = keep - h;
      const double lm = loss_of(net, x);
      net.w[layer][k] = keep;
      const double fd = (lp - lm) / (2 * h);
      CHECK(grad.w[layer][k] == doctest::Approx(fd).epsilon(1e-4));
    }
    const double keep = net.b[layer][0];
    net.b[layer][0] = keep + h;
    const double lp = loss_of(net, x);
    net.b[layer][0] = keep - h;
    const double lm = loss_of(net, x);
    net.b[layer][0] = keep;
    CHECK(grad.b[layer][0] == doctest::Approx((lp - lm) / (2 * h)).epsilon(1e-4));
  }

  // input gradient
  REQUIRE(d_in.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    auto xp = x, xm = x;
    xp[i] += h;
    xm[i] -= h;
    const double fd = (loss_of(net, xp) - loss_of(net, xm)) / (2 * h);
    CHECK(d_in[i] == doctest::Approx(fd).epsilon(1e-4));
  }
}

TEST_CASE("gradient accumulates across calls") {
  std::mt19937_64 rng(5);
  auto net = Mlp::make({2, 4, 1}, rng);
  const std::vector<double> x{0.2, 0.7};
  MlpTrace tr;
  forward_trace(net, x, tr);
  auto g1 = MlpGrad::zeros_like(net);
  std::vector<double> one{1.0};
  backward(net, tr, one, g1);
  auto g2 = MlpGrad::zeros_like(net);
  backward(net, tr, one, g2);
  backward(net, tr, one, g2);
  CHECK(g2.w[0][0] == doctest::Approx(2.0 * g1.w[0][0]).epsilon(1e-12));
  g2.scale(0.5);
  CHECK(g2.w[0][0] == doctest::Approx(g1.w[0][0]).epsilon(1e-12));
  g2.zero();
  CHECK(g2.w[0][0] == 0.0);
}

TEST_CASE("adam first step moves by lr and descends") {
  std::mt19937_64 rng(9);
  auto net = Mlp::make({2, 5, 1}, rng);
  const std::vector<double> x{0.6, -0.1};
  const double before = loss_of(net, x);

  auto opt = Adam::zeros_like(net);
  for (int it = 0; it < 50; ++it) {
    MlpTrace tr;
    const auto y = forward_trace(net, x, tr);
    auto grad = MlpGrad::zeros_like(net);
    std::vector<double> d_out{y[0]};
    backward(net, tr, d_out, grad, nullptr);
    if (it == 0) {
      // bias-corrected first step has magnitude ~lr wherever grad != 0
      Mlp copy = net;
      auto o2 = Adam::zeros_like(copy);
      o2.step(copy, grad, 1e-2);
      for (std::size_t layer = 0; layer < net.num_layers(); ++layer)
        for (std::size_t k = 0; k < net.w[layer].size(); ++k)
          if (std::abs(grad.w[layer][k]) > 1e-4)
            CHECK(std::abs(copy.w[layer][k] - net.w[layer][k]) ==
                  doctest::Approx(1e-2).epsilon(1e-3));
    }
    opt.step(net, grad, 1e-2);
  }
  CHECK(loss_of(net, x) < before);
}

TEST_CASE("scalar adam drives a quadratic to its minimum") {
  double x = 5.0;
  ScalarAdam opt;
  for (int i = 0; i < 3000; ++i) opt.step(x, 2.0 * (x - 1.5), 1e-2);
  CHECK(x == doctest::Approx(1.5).epsilon(1e-3));
}

TEST_CASE("soft update interpolates and converges") {
  std::mt19937_64 rng(21);
  auto src = Mlp::make({2, 4, 1}, rng);
  auto tgt = Mlp::make({2, 4, 1}, rng);
  const double w0 = tgt.w[0][0];
  soft_update(tgt, src, 0.1);
  CHECK(tgt.w[0][0] == doctest::Approx(0.9 * w0 + 0.1 * src.w[0][0]).epsilon(1e-12));
  for (int i = 0; i < 2000; ++i) soft_update(tgt, src, 0.05);
  for (std::size_t i = 0; i < src.param_count(); ++i)
    CHECK(tgt.param(i) == doctest::Approx(src.param(i)).epsilon(1e-10));
  // tau = 1 copies outright
  auto tgt2 = Mlp::make({2, 4, 1}, rng);
  soft_update(tgt2, src, 1.0);
  for (std::size_t i = 0; i < src.param_count(); ++i)
    CHECK(tgt2.param(i) == src.param(i));
}
