#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pwmlp/activation.hpp"
#include "pwmlp/builders.hpp"
#include "pwmlp/matrix.hpp"

namespace pwmlp {

enum class KernelShape { Box, Triangle, CubicBump };

/// Localized kernel evaluated in the normalized coordinate u = h^-1 (x - x_j).
///
/// Box:       1 on [0, 1), else 0.
/// Triangle:  1 - |u| on [-1, 1], else 0.
/// CubicBump: q(1 - |u|) on [-2, 2], else 0; equal to q(u + 1) + q(1 - u) - 1,
///            the response of one two-neuron cubic pair minus its shift.
struct Kernel {
  KernelShape shape = KernelShape::Triangle;
  double inflection_slope = kDefaultInflectionSlope;  ///< CubicBump only

  static Kernel box() { return {KernelShape::Box, kDefaultInflectionSlope}; }
  static Kernel triangle() { return {KernelShape::Triangle, kDefaultInflectionSlope}; }
  /// Throws DomainError for a slope outside [0, 0.75].
  static Kernel cubic_bump(double inflection_slope = kDefaultInflectionSlope);

  /// Half-width of the support in units of h.
  int support_radius() const noexcept;
};

double eval_kernel(const Kernel& kernel, double u);

enum class KnotSpacing { EveryKnot, EveryOtherKnot };

/// One active kernel at a point: coefficient row and kernel value.
struct BasisTerm {
  std::size_t row;
  double value;
};

/// Reference approximant sum_j c_j K(h^-1 (x - x_j)) over the knots at the
/// given spacing. Coefficients hold one column per output dimension.
///
/// For the box kernel only rows 0..N-1 carry a kernel, and the last box is
/// closed at x = 1 so that f_c(1) = f(x_{N-1}).
class PiecewiseOracle {
 public:
  /// Throws UsageError when the coefficient row count does not match the
  /// spacing (N + 1 or N/2 + 1; the latter needs even N) or entries are not finite.
  PiecewiseOracle(KnotGrid grid, Kernel kernel, Matrix coefficients,
                  KnotSpacing spacing = KnotSpacing::EveryKnot);

  /// Box kernels weighted by f(x_j).
  static PiecewiseOracle box(const TargetSamples& samples);
  /// Triangle kernels weighted by f(x_j).
  static PiecewiseOracle triangle(const TargetSamples& samples);
  /// Cubic bumps at every knot weighted by the coupling solution g.
  static PiecewiseOracle coupled_bump(const TargetSamples& samples,
                                      double inflection_slope = kDefaultInflectionSlope);
  /// Cubic bumps at even knots weighted by f(x_j). Needs even N.
  static PiecewiseOracle spaced_bump(const TargetSamples& samples,
                                     double inflection_slope = kDefaultInflectionSlope);

  const KnotGrid& grid() const noexcept { return grid_; }
  const Kernel& kernel() const noexcept { return kernel_; }
  const Matrix& coefficients() const noexcept { return coeffs_; }
  KnotSpacing spacing() const noexcept { return spacing_; }
  std::size_t output_dim() const noexcept { return coeffs_.cols(); }
  std::size_t row_count() const noexcept { return coeffs_.rows(); }
  /// Knot index of a coefficient row.
  int knot_of_row(std::size_t row) const noexcept;

  /// Appends the kernels whose support contains x, in increasing row order.
  /// Throws DomainError for x outside [0, 1].
  void basis_at(double x, std::vector<BasisTerm>& out) const;

  /// Kernel sum at x using only the O(1) kernels around x.
  std::vector<double> eval(double x) const;
  /// Same sum taken over every coefficient row.
  std::vector<double> eval_naive(double x) const;

 private:
  double kernel_value(std::size_t row, double x) const noexcept;

  KnotGrid grid_;
  Kernel kernel_;
  Matrix coeffs_;
  KnotSpacing spacing_;
};

/// Oracle realizing the same approximant as build_network(m, samples, slope).
PiecewiseOracle matching_oracle(Method m, const TargetSamples& samples,
                                double inflection_slope = kDefaultInflectionSlope);

/// p-dimensional array in row-major order (last axis fastest).
struct NdArray {
  std::vector<std::size_t> shape;
  std::vector<double> data;
};

/// Tensor-product approximant sum_j corner[j] prod_d K(h_d^-1 (point_d - x_{j_d})).
/// Each axis contributes its grid, kernel and spacing; axis coefficients are
/// not used. For p = 1 the result equals PiecewiseOracle::eval bit for bit.
/// Throws UsageError for p outside 1..3, mixed kernel shapes, or a corner
/// shape that differs from the per-axis row counts; DomainError for a
/// coordinate outside [0, 1].
double eval_tensor_product(std::span<const PiecewiseOracle> axes, const NdArray& corner_values,
                           std::span<const double> point);

struct KernelFit {
  std::vector<double> omega;
  Kernel kernel;
  KnotGrid grid;
  double rms_residual = 0.0;
};

/// Ridge term added to the diagonal of the normal equations.
inline constexpr double kKernelFitRidge = 1e-12;

/// Least-squares weights omega_j of sum_j omega_j K(h^-1 (x - x_j)) over the
/// N + 1 knots, from dense (x, y) samples. Solves the ridge-regularized normal
/// equations by Cholesky.
/// Throws UsageError when there are fewer samples than knots, DomainError for
/// x outside [0, 1], NumericalError when the factorization fails.
KernelFit fit_kernel_weights(std::span<const double> xs, std::span<const double> ys, const Kernel& kernel,
                             const KnotGrid& grid);

/// Brute-force cross-check for solve_bump_coupling: assembles the dense
/// (N+1) x (N+1) coupling matrix and solves it by LU with partial pivoting.
/// Throws NumericalError if the matrix is numerically singular.
Matrix dense_solve_coupling(const TargetSamples& samples);
/// Single-column form; accepts any size >= 1.
std::vector<double> dense_solve_coupling_column(std::span<const double> f);

}  // namespace pwmlp
