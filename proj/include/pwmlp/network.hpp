#pragma once

#include <span>
#include <string>
#include <vector>

#include "pwmlp/activation.hpp"
#include "pwmlp/matrix.hpp"

namespace pwmlp {

/// Hidden neuron with pre-activation response y = weight * x + bias.
struct HiddenNeuron {
  double weight = 0.0;
  double bias = 0.0;
  Activation activation = Activation::relu();
};

/// Affine map from hidden activations to one output dimension. The bias is
/// the sum of all per-neuron output biases.
struct OutputTap {
  std::vector<double> weights;
  double bias = 0.0;
};

struct NetworkInfo {
  std::string method;  ///< construction tag, e.g. "linear-relu"
  int n = 0;           ///< number of knot subintervals (0 when not built on a grid)
};

/// One-hidden-layer perceptron with one input, per-neuron activations, and
/// any number of output taps sharing the hidden layer. Immutable once built.
class Network {
 public:
  /// Throws UsageError when there are no neurons or taps, a tap's weight
  /// count differs from the neuron count, or any parameter is non-finite.
  Network(std::vector<HiddenNeuron> neurons, std::vector<OutputTap> outputs, NetworkInfo info = {});

  std::size_t hidden_size() const noexcept { return neurons_.size(); }
  std::size_t output_dim() const noexcept { return outputs_.size(); }
  const std::vector<HiddenNeuron>& neurons() const noexcept { return neurons_; }
  const std::vector<OutputTap>& outputs() const noexcept { return outputs_; }
  const NetworkInfo& info() const noexcept { return info_; }

  /// Output vector at x. Each component is tap.bias + sum_j w_j Act_j(y_j),
  /// accumulated in neuron order with compensated summation.
  /// Throws DomainError for non-finite x.
  std::vector<double> forward(double x) const;

  /// Row i is forward(grid[i]). Throws UsageError for an empty grid.
  Matrix forward_grid(std::span<const double> grid) const;

 private:
  void forward_into(double x, std::span<double> hidden, std::span<double> out) const;

  std::vector<HiddenNeuron> neurons_;
  std::vector<OutputTap> outputs_;
  NetworkInfo info_;
};

}  // namespace pwmlp
