#include "pwmlp/network.hpp"

#include <cmath>
#include <string>

#include "pwmlp/errors.hpp"

namespace pwmlp {

Network::Network(std::vector<HiddenNeuron> neurons, std::vector<OutputTap> outputs, NetworkInfo info)
    : neurons_(std::move(neurons)), outputs_(std::move(outputs)), info_(std::move(info)) {
  if (neurons_.empty()) throw UsageError("network needs at least one hidden neuron");
  if (outputs_.empty()) throw UsageError("network needs at least one output tap");
  for (std::size_t j = 0; j < neurons_.size(); ++j) {
    if (!std::isfinite(neurons_[j].weight) || !std::isfinite(neurons_[j].bias)) {
      throw UsageError("neuron " + std::to_string(j) + " has a non-finite parameter");
    }
  }
  for (std::size_t k = 0; k < outputs_.size(); ++k) {
    const auto& tap = outputs_[k];
    if (tap.weights.size() != neurons_.size()) {
      throw UsageError("output tap " + std::to_string(k) + " has " +
                       std::to_string(tap.weights.size()) + " weights for " +
                       std::to_string(neurons_.size()) + " neurons");
    }
    if (!std::isfinite(tap.bias)) {
      throw UsageError("output tap " + std::to_string(k) + " has a non-finite bias");
    }
    for (double w : tap.weights) {
      if (!std::isfinite(w)) {
        throw UsageError("output tap " + std::to_string(k) + " has a non-finite weight");
      }
    }
  }
}

void Network::forward_into(double x, std::span<double> hidden, std::span<double> out) const {
  for (std::size_t j = 0; j < neurons_.size(); ++j) {
    const auto& n = neurons_[j];
    hidden[j] = n.activation(n.weight * x + n.bias);
  }
  for (std::size_t k = 0; k < outputs_.size(); ++k) {
    const auto& tap = outputs_[k];
    CompensatedSum acc(tap.bias);
    for (std::size_t j = 0; j < hidden.size(); ++j) {
      if (hidden[j] != 0.0) acc.add_product(tap.weights[j], hidden[j]);
    }
    out[k] = acc.value();
  }
}

std::vector<double> Network::forward(double x) const {
  if (!std::isfinite(x)) throw DomainError("network input is not finite");
  std::vector<double> hidden(neurons_.size());
  std::vector<double> out(outputs_.size());
  forward_into(x, hidden, out);
  return out;
}

Matrix Network::forward_grid(std::span<const double> grid) const {
  if (grid.empty()) throw UsageError("evaluation grid is empty");
  for (double x : grid) {
    if (!std::isfinite(x)) throw DomainError("grid point is not finite");
  }
  Matrix result(grid.size(), outputs_.size());
  std::vector<double> hidden(neurons_.size());
  for (std::size_t i = 0; i < grid.size(); ++i) forward_into(grid[i], hidden, result.row(i));
  return result;
}

}  // namespace pwmlp
