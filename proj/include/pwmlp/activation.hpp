#pragma once

#include <optional>
#include <string_view>

namespace pwmlp {

enum class ActivationKind { Step, Relu, Ramp, Cubic };

/// Coefficients of the interior polynomial a3 x^3 + a2 x^2 + a1 x + a0 of
/// the unit cubic activation.
struct CubicCoefficients {
  double a0 = 0.5;
  double a1 = 0.75;
  double a2 = 0.0;
  double a3 = -0.25;
};

/// Slope of the unit cubic at its inflection point (0, 0.5). 0.75 makes the
/// cubic meet both plateaus with zero derivative.
inline constexpr double kDefaultInflectionSlope = 0.75;
inline constexpr double kMaxInflectionSlope = 0.75;

/// Solves q(-1) = 0, q(0) = 0.5, q(1) = 1 plus q'(0) = slope.
/// Throws DomainError("non-monotone cubic") unless 0 <= slope <= 0.75.
CubicCoefficients solve_cubic_coefficients(double inflection_slope);

/// Activation function of a hidden neuron.
///
/// Step:  1 for x >= 0, else 0 (closed at zero).
/// Relu:  max(0, x).
/// Ramp:  clamp(x, 0, 1).
/// Cubic: 0 below -1, 1 above 1, cubic polynomial in between; anti-symmetric
///        about (0, 0.5) so q(x) + q(-x) = 1.
class Activation {
 public:
  static Activation step() { return Activation(ActivationKind::Step, std::nullopt); }
  static Activation relu() { return Activation(ActivationKind::Relu, std::nullopt); }
  static Activation ramp() { return Activation(ActivationKind::Ramp, std::nullopt); }
  static Activation cubic(double inflection_slope = kDefaultInflectionSlope);

  ActivationKind kind() const noexcept { return kind_; }
  const std::optional<CubicCoefficients>& cubic_coefficients() const noexcept { return cubic_; }
  /// a1 for cubic activations; the remaining coefficients follow from it.
  double inflection_slope() const;

  /// Unchecked evaluation; callers guarantee finite x.
  double operator()(double x) const noexcept;

  friend bool operator==(const Activation& a, const Activation& b) noexcept;

 private:
  Activation(ActivationKind kind, std::optional<CubicCoefficients> cubic)
      : kind_(kind), cubic_(cubic) {}

  ActivationKind kind_;
  std::optional<CubicCoefficients> cubic_;
};

/// Checked evaluation. Throws DomainError for non-finite x.
double eval_activation(const Activation& act, double x);

const char* activation_kind_name(ActivationKind kind) noexcept;
/// Inverse of activation_kind_name; nullopt for unknown names.
std::optional<ActivationKind> parse_activation_kind(std::string_view name) noexcept;

}  // namespace pwmlp
