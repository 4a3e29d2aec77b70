#include "pwmlp/targets.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace pwmlp {
namespace {

double const1(double) { return 1.0; }
double const1_d(double) { return 0.0; }

double affine(double x) { return 2.0 * x + 1.0; }
double affine_d(double) { return 2.0; }

double sin2pi(double x) { return std::sin(2.0 * std::numbers::pi * x) + 0.5 * x; }
double sin2pi_d(double x) { return 2.0 * std::numbers::pi * std::cos(2.0 * std::numbers::pi * x) + 0.5; }

double runge(double x) {
  const double d = x - 0.5;
  return 1.0 / (1.0 + 25.0 * d * d);
}
double runge_d(double x) {
  const double d = x - 0.5;
  const double den = 1.0 + 25.0 * d * d;
  return -50.0 * d / (den * den);
}

double absdev(double x) { return std::abs(x - 0.5); }
double absdev_d(double x) { return x > 0.5 ? 1.0 : (x < 0.5 ? -1.0 : 0.0); }

constexpr std::array<Target, 5> kTargets{{
    {"const1", "1", const1, const1_d},
    {"affine", "2x + 1", affine, affine_d},
    {"sin2pi", "sin(2 pi x) + 0.5 x", sin2pi, sin2pi_d},
    {"runge", "1 / (1 + 25 (x - 0.5)^2)", runge, runge_d},
    {"absdev", "|x - 0.5|", absdev, absdev_d},
}};

}  // namespace

std::span<const Target> builtin_targets() noexcept { return kTargets; }

const Target* find_target(std::string_view name) noexcept {
  for (const auto& t : kTargets) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

}  // namespace pwmlp
