#include "lfuav/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace lfuav {

Mlp Mlp::make(std::vector<int> sizes, std::mt19937_64& rng) {
  if (sizes.size() < 2) throw std::invalid_argument("Mlp: need at least 2 sizes");
  Mlp net;
  net.sizes = std::move(sizes);
  for (std::size_t l = 0; l + 1 < net.sizes.size(); ++l) {
    const int in = net.sizes[l];
    const int out = net.sizes[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    std::uniform_real_distribution<double> u(-bound, bound);
    std::vector<double> wl(static_cast<std::size_t>(out) * in);
    std::vector<double> bl(out);
    for (auto& x : wl) x = u(rng);
    for (auto& x : bl) x = u(rng);
    net.w.push_back(std::move(wl));
    net.b.push_back(std::move(bl));
  }
  return net;
}

std::vector<double> Mlp::forward(std::span<const double> x) const {
  MlpTrace t;
  return forward_trace(*this, x, t);
}

std::size_t Mlp::param_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < w.size(); ++l) n += w[l].size() + b[l].size();
  return n;
}

double& Mlp::param(std::size_t i) {
  for (std::size_t l = 0; l < w.size(); ++l) {
    if (i < w[l].size()) return w[l][i];
    i -= w[l].size();
    if (i < b[l].size()) return b[l][i];
    i -= b[l].size();
  }
  throw std::out_of_range("Mlp::param");
}

double Mlp::param(std::size_t i) const { return const_cast<Mlp*>(this)->param(i); }

std::vector<double> forward_trace(const Mlp& net, std::span<const double> x,
                                  MlpTrace& trace) {
  if (static_cast<int>(x.size()) != net.input_size())
    throw std::invalid_argument("Mlp: input size mismatch");
  trace.acts.assign(net.num_layers() + 1, {});
  trace.acts[0].assign(x.begin(), x.end());

  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const int in = net.sizes[l];
    const int out = net.sizes[l + 1];
    const bool hidden = l + 1 < net.num_layers();
    const auto& a = trace.acts[l];
    auto& z = trace.acts[l + 1];
    z.assign(out, 0.0);
    for (int o = 0; o < out; ++o) {
      const double* wr = net.w[l].data() + static_cast<std::size_t>(o) * in;
      double s = net.b[l][o];
      for (int i = 0; i < in; ++i) s += wr[i] * a[i];
      z[o] = hidden ? (s > 0.0 ? s : 0.0) : s;
    }
  }
  return trace.acts.back();
}

MlpGrad MlpGrad::zeros_like(const Mlp& net) {
  MlpGrad g;
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    g.w.emplace_back(net.w[l].size(), 0.0);
    g.b.emplace_back(net.b[l].size(), 0.0);
  }
  return g;
}

void MlpGrad::zero() {
  for (auto& v : w) std::fill(v.begin(), v.end(), 0.0);
  for (auto& v : b) std::fill(v.begin(), v.end(), 0.0);
}

void MlpGrad::scale(double c) {
  for (auto& v : w)
    for (auto& x : v) x *= c;
  for (auto& v : b)
    for (auto& x : v) x *= c;
}

void backward(const Mlp& net, const MlpTrace& trace, std::span<const double> d_out,
              MlpGrad& grad, std::vector<double>* d_input) {
  std::vector<double> delta(d_out.begin(), d_out.end());
  for (std::size_t li = net.num_layers(); li-- > 0;) {
    const int in = net.sizes[li];
    const int out = net.sizes[li + 1];
    const bool hidden = li + 1 < net.num_layers();
    const auto& a = trace.acts[li];
    const auto& z = trace.acts[li + 1];

    // ReLU gate (post-activation is zero exactly where the unit was clipped)
    if (hidden)
      for (int o = 0; o < out; ++o)
        if (z[o] <= 0.0) delta[o] = 0.0;

    for (int o = 0; o < out; ++o) {
      const double d = delta[o];
      if (d == 0.0) continue;
      double* gw = grad.w[li].data() + static_cast<std::size_t>(o) * in;
      for (int i = 0; i < in; ++i) gw[i] += d * a[i];
      grad.b[li][o] += d;
    }

    if (li > 0 || d_input) {
      std::vector<double> prev(in, 0.0);
      for (int o = 0; o < out; ++o) {
        const double d = delta[o];
        if (d == 0.0) continue;
        const double* wr = net.w[li].data() + static_cast<std::size_t>(o) * in;
        for (int i = 0; i < in; ++i) prev[i] += d * wr[i];
      }
      delta = std::move(prev);
    }
  }
  if (d_input) *d_input = std::move(delta);
}

Adam Adam::zeros_like(const Mlp& net) {
  Adam a;
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    a.mw.emplace_back(net.w[l].size(), 0.0);
    a.vw.emplace_back(net.w[l].size(), 0.0);
    a.mb.emplace_back(net.b[l].size(), 0.0);
    a.vb.emplace_back(net.b[l].size(), 0.0);
  }
  return a;
}

void Adam::step(Mlp& net, const MlpGrad& grad, double lr) {
  ++t;
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t));
  auto upd = [&](std::vector<double>& p, const std::vector<double>& g,
                 std::vector<double>& m, std::vector<double>& v) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
      v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
      p[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
    }
  };
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    upd(net.w[l], grad.w[l], mw[l], vw[l]);
    upd(net.b[l], grad.b[l], mb[l], vb[l]);
  }
}

void ScalarAdam::step(double& x, double grad, double lr) {
  ++t;
  m = beta1 * m + (1.0 - beta1) * grad;
  v = beta2 * v + (1.0 - beta2) * grad * grad;
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(t));
  x -= lr * (m / c1) / (std::sqrt(v / c2) + eps);
}

void soft_update(Mlp& target, const Mlp& src, double tau) {
  for (std::size_t l = 0; l < src.num_layers(); ++l) {
    for (std::size_t i = 0; i < src.w[l].size(); ++i)
      target.w[l][i] = tau * src.w[l][i] + (1.0 - tau) * target.w[l][i];
    for (std::size_t i = 0; i < src.b[l].size(); ++i)
      target.b[l][i] = tau * src.b[l][i] + (1.0 - tau) * target.b[l][i];
  }
}

}  // namespace lfuav
