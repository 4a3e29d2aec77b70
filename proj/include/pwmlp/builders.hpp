#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pwmlp/activation.hpp"
#include "pwmlp/matrix.hpp"
#include "pwmlp/network.hpp"

namespace pwmlp {

/// Uniform partition of [0, 1] into n subintervals, knots x_j = j / n.
class KnotGrid {
 public:
  /// Throws UsageError for n < 1.
  explicit KnotGrid(int n);

  int n() const noexcept { return n_; }
  double h() const noexcept { return 1.0 / n_; }
  std::size_t knot_count() const noexcept { return static_cast<std::size_t>(n_) + 1; }
  /// Defined for any integer j, including the virtual knots -1 and n + 1.
  double knot(int j) const noexcept { return static_cast<double>(j) / n_; }
  std::vector<double> knots() const;

 private:
  int n_;
};

/// Target values at the knots: values(j, k) = f_k(x_j).
class TargetSamples {
 public:
  /// Throws UsageError unless values has n + 1 rows, at least one column, and finite entries.
  TargetSamples(KnotGrid grid, Matrix values);

  const KnotGrid& grid() const noexcept { return grid_; }
  const Matrix& values() const noexcept { return values_; }
  std::size_t output_dim() const noexcept { return values_.cols(); }
  /// Largest |f| over all samples.
  double max_abs() const noexcept;

 private:
  KnotGrid grid_;
  Matrix values_;
};

/// Samples a scalar function at the knots of grid.
template <class F>
TargetSamples sample_function(const KnotGrid& grid, F&& f) {
  Matrix values(grid.knot_count(), 1);
  for (int j = 0; j <= grid.n(); ++j) values(j, 0) = f(grid.knot(j));
  return TargetSamples(grid, std::move(values));
}

enum class Method { Constant, LinearRelu, LinearRamp, Cubic, CubicSpaced };

inline constexpr Method kAllMethods[] = {Method::Constant, Method::LinearRelu, Method::LinearRamp,
                                         Method::Cubic, Method::CubicSpaced};

const char* method_name(Method m) noexcept;
std::optional<Method> parse_method(std::string_view name) noexcept;
/// Hidden-layer size the method produces for n subintervals.
std::size_t expected_neuron_count(Method m, int n) noexcept;

/// Thomas algorithm for a tridiagonal system. lower[0] and upper[size-1] are
/// ignored. No pivoting: callers supply diagonally dominant or symmetric
/// positive definite matrices. Throws NumericalError on a zero pivot.
std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs);

/// Solves g_j + 0.5 (g_{j-1} + g_{j+1}) = f_j, j = 0..size-1, with zero
/// virtual neighbours. Accepts any size >= 1.
std::vector<double> solve_coupling_column(std::span<const double> f);

/// Bump weights g per output dimension, one column each.
struct CouplingSolution {
  Matrix g;
  double residual_max = 0.0;
};

CouplingSolution solve_bump_coupling(const TargetSamples& samples);

/// N step neurons; reproduces the piecewise-constant (box) approximant.
Network build_piecewise_constant(const TargetSamples& samples);
/// 4(N+1) ReLU neurons; four per knot form a triangle kernel plus a unit shift.
Network build_piecewise_linear_relu(const TargetSamples& samples);
/// 2(N+1) ramp neurons; a rising and a falling ramp per knot.
Network build_piecewise_linear_ramp(const TargetSamples& samples);
/// 2(N+1) cubic neurons weighted by the coupling solution so the output
/// interpolates f at every knot.
Network build_piecewise_cubic_coupled(const TargetSamples& samples,
                                      double inflection_slope = kDefaultInflectionSlope);
/// N+2 cubic neurons, bumps at even knots only, weighted directly by f.
/// Throws UsageError("spaced design requires even N") for odd N.
Network build_piecewise_cubic_spaced(const TargetSamples& samples,
                                     double inflection_slope = kDefaultInflectionSlope);

/// Dispatches to the builder for m. The slope only affects the cubic methods.
Network build_network(Method m, const TargetSamples& samples,
                      double inflection_slope = kDefaultInflectionSlope);

}  // namespace pwmlp
