#pragma once

#include <span>
#include <string_view>

namespace pwmlp {

/// Closed-form scalar target on [0, 1] with its first derivative.
struct Target {
  std::string_view name;
  std::string_view formula;
  double (*value)(double);
  double (*derivative)(double);
};

/// const1  f = 1
/// affine  f = 2x + 1
/// sin2pi  f = sin(2 pi x) + 0.5 x
/// runge   f = 1 / (1 + 25 (x - 0.5)^2)
/// absdev  f = |x - 0.5|   (derivative taken as 0 at the kink)
std::span<const Target> builtin_targets() noexcept;

/// nullptr when the name is not registered.
const Target* find_target(std::string_view name) noexcept;

}  // namespace pwmlp
