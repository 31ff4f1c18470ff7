#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

namespace lfuav {

// Fully connected net: ReLU hidden layers, linear output. Weights are
// row-major [out x in] per layer.
struct Mlp {
  std::vector<int> sizes;
  std::vector<std::vector<double>> w;
  std::vector<std::vector<double>> b;

  static Mlp make(std::vector<int> sizes, std::mt19937_64& rng);

  int input_size() const { return sizes.front(); }
  int output_size() const { return sizes.back(); }
  std::size_t num_layers() const { return w.size(); }

  std::vector<double> forward(std::span<const double> x) const;

  // Flat parameter views for optimizers, checkpoints and finite differencing.
  std::size_t param_count() const;
  double& param(std::size_t i);
  double param(std::size_t i) const;
};

// Post-activation values per layer; acts[0] is the input.
struct MlpTrace {
  std::vector<std::vector<double>> acts;
};

std::vector<double> forward_trace(const Mlp& net, std::span<const double> x,
                                  MlpTrace& trace);

struct MlpGrad {
  std::vector<std::vector<double>> w;
  std::vector<std::vector<double>> b;

  static MlpGrad zeros_like(const Mlp& net);
  void zero();
  void scale(double c);
};

// Backpropagates d_out (gradient of the loss w.r.t. the net output) through
// the traced forward pass, accumulating into grad. Optionally also returns
// the gradient w.r.t. the net input (needed for actor losses that flow
// through a critic's action input).
void backward(const Mlp& net, const MlpTrace& trace, std::span<const double> d_out,
              MlpGrad& grad, std::vector<double>* d_input = nullptr);

struct Adam {
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  std::vector<std::vector<double>> mw, vw, mb, vb;
  long t = 0;

  static Adam zeros_like(const Mlp& net);
  void step(Mlp& net, const MlpGrad& grad, double lr);
};

struct ScalarAdam {
  double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  double m = 0.0, v = 0.0;
  long t = 0;
  void step(double& x, double grad, double lr);
};

void soft_update(Mlp& target, const Mlp& src, double tau);

}  // namespace lfuav
