#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pwmlp/builders.hpp"
#include "pwmlp/network.hpp"
#include "pwmlp/oracle.hpp"
#include "pwmlp/targets.hpp"

namespace pwmlp {

using ScalarFunction = std::function<double(double)>;

/// Default evaluation grid. Its spacing 1/10000 is not a multiple of the
/// power-of-two knot spacings, so most grid points fall strictly between knots.
inline constexpr std::size_t kDefaultGridSize = 10001;

/// x_i = i / (size - 1), i = 0..size-1. Throws UsageError for size < 2.
std::vector<double> uniform_grid(std::size_t size);

struct ErrorSummary {
  double sup_error = 0.0;
  double l2_error = 0.0;  ///< root mean square over the grid points
  std::size_t grid_size = 0;
  double worst_x = 0.0;
};

/// Throws UsageError for grid_size < 2 and NumericalError naming x when
/// either closure returns a non-finite value.
ErrorSummary measure_error(const ScalarFunction& approx, const ScalarFunction& target, std::size_t grid_size);

struct EquivalenceReport {
  bool passed = false;
  double max_deviation = 0.0;
  double worst_x = 0.0;
  std::size_t worst_output = 0;
  double tolerance = 0.0;
  std::size_t grid_size = 0;
};

/// Compares every output of net against model on a uniform grid.
/// Throws UsageError when the output dimensions differ.
EquivalenceReport verify_equivalence(const Network& net, const PiecewiseOracle& model, std::size_t grid_size,
                                     double tol);

/// Which approximant estimate_order measures.
enum class ErrorRoute { Network, Oracle };

/// Least-squares line through (log N, log error); order is the negated slope.
struct OrderFit {
  double order = 0.0;
  double r_squared = 0.0;
};

/// Throws UsageError for mismatched or short (< 2) inputs and DomainError for
/// non-positive errors.
OrderFit fit_loglog_order(std::span<const int> n_values, std::span<const double> errors);

/// Errors at or below this (relative to max(1, |f|_inf)) count as exact
/// reproduction; no order is fitted then.
inline constexpr double kExactReproductionThreshold = 1e-12;

struct ConvergenceReport {
  Method method = Method::Constant;
  std::string target;
  double inflection_slope = kDefaultInflectionSlope;
  std::size_t grid_size = 0;
  std::vector<int> n_values;
  std::vector<double> sup_errors;
  std::vector<double> l2_errors;
  /// Empty when the target is reproduced exactly.
  std::optional<double> fitted_order;
  double r_squared = 0.0;
  bool exact_reproduction = false;
};

/// Builds the approximant for every N, measures sup/RMS error against the
/// analytic target, and fits the convergence order on the sup errors.
/// Throws UsageError unless there are >= 3 strictly increasing N values, each
/// >= 4 (and even for cubic-spaced).
ConvergenceReport estimate_order(Method method, const Target& target, std::span<const int> n_values,
                                 std::size_t grid_size = kDefaultGridSize,
                                 double inflection_slope = kDefaultInflectionSlope,
                                 ErrorRoute route = ErrorRoute::Network);

/// "n,h,sup_error,l2_error" rows in shortest round-trip decimal.
std::string convergence_csv(const ConvergenceReport& report);
/// JSON summary; fitted_order is null when not applicable.
std::string convergence_json(const ConvergenceReport& report);

}  // namespace pwmlp
