#include "pwmlp/activation.hpp"

#include <algorithm>
#include <cmath>

#include "pwmlp/errors.hpp"

namespace pwmlp {

CubicCoefficients solve_cubic_coefficients(double inflection_slope) {
  // q'(x) = 3 a3 x^2 + a1 >= 0 on [-1, 1] requires 0 <= a1 <= 0.75.
  if (!(inflection_slope >= 0.0 && inflection_slope <= kMaxInflectionSlope)) {
    throw DomainError("non-monotone cubic");
  }
  CubicCoefficients c;
  c.a0 = 0.5;
  c.a1 = inflection_slope;
  c.a2 = 0.0;
  c.a3 = 0.5 - inflection_slope;
  return c;
}

Activation Activation::cubic(double inflection_slope) {
  return Activation(ActivationKind::Cubic, solve_cubic_coefficients(inflection_slope));
}

double Activation::inflection_slope() const {
  if (!cubic_) throw UsageError("inflection slope requested for a non-cubic activation");
  return cubic_->a1;
}

double Activation::operator()(double x) const noexcept {
  switch (kind_) {
    case ActivationKind::Step:
      return x >= 0.0 ? 1.0 : 0.0;
    case ActivationKind::Relu:
      return x > 0.0 ? x : 0.0;
    case ActivationKind::Ramp:
      return std::clamp(x, 0.0, 1.0);
    case ActivationKind::Cubic: {
      if (x <= -1.0) return 0.0;
      if (x >= 1.0) return 1.0;
      const auto& c = *cubic_;
      return ((c.a3 * x + c.a2) * x + c.a1) * x + c.a0;
    }
  }
  return 0.0;
}

bool operator==(const Activation& a, const Activation& b) noexcept {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != ActivationKind::Cubic) return true;
  return a.cubic_->a1 == b.cubic_->a1;
}

double eval_activation(const Activation& act, double x) {
  if (!std::isfinite(x)) throw DomainError("activation input is not finite");
  return act(x);
}

const char* activation_kind_name(ActivationKind kind) noexcept {
  switch (kind) {
    case ActivationKind::Step: return "step";
    case ActivationKind::Relu: return "relu";
    case ActivationKind::Ramp: return "ramp";
    case ActivationKind::Cubic: return "cubic";
  }
  return "unknown";
}

std::optional<ActivationKind> parse_activation_kind(std::string_view name) noexcept {
  if (name == "step") return ActivationKind::Step;
  if (name == "relu") return ActivationKind::Relu;
  if (name == "ramp") return ActivationKind::Ramp;
  if (name == "cubic") return ActivationKind::Cubic;
  return std::nullopt;
}

}  // namespace pwmlp
