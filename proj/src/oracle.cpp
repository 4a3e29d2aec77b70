#include "pwmlp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <Eigen/LU>

#include "pwmlp/errors.hpp"

namespace pwmlp {

Kernel Kernel::cubic_bump(double inflection_slope) {
  solve_cubic_coefficients(inflection_slope);
  return {KernelShape::CubicBump, inflection_slope};
}

int Kernel::support_radius() const noexcept {
  switch (shape) {
    case KernelShape::Box: return 1;
    case KernelShape::Triangle: return 1;
    case KernelShape::CubicBump: return 2;
  }
  return 2;
}

double eval_kernel(const Kernel& kernel, double u) {
  switch (kernel.shape) {
    case KernelShape::Box:
      return (u >= 0.0 && u < 1.0) ? 1.0 : 0.0;
    case KernelShape::Triangle: {
      const double a = std::abs(u);
      return a <= 1.0 ? 1.0 - a : 0.0;
    }
    case KernelShape::CubicBump: {
      const double a = std::abs(u);
      if (a >= 2.0) return 0.0;
      if (a <= 0.0) return 1.0;
      // q(v) = 0.5 + s v + (0.5 - s) v^3 at v = 1 - |u|
      const double v = 1.0 - a;
      const double s = kernel.inflection_slope;
      return 0.5 + v * (s + (0.5 - s) * v * v);
    }
  }
  return 0.0;
}

PiecewiseOracle::PiecewiseOracle(KnotGrid grid, Kernel kernel, Matrix coefficients, KnotSpacing spacing)
    : grid_(grid), kernel_(kernel), coeffs_(std::move(coefficients)), spacing_(spacing) {
  std::size_t rows = grid_.knot_count();
  if (spacing_ == KnotSpacing::EveryOtherKnot) {
    if (grid_.n() % 2 != 0) throw UsageError("every-other-knot spacing requires even N");
    rows = static_cast<std::size_t>(grid_.n()) / 2 + 1;
  }
  if (coeffs_.rows() != rows) {
    throw UsageError("oracle expects " + std::to_string(rows) + " coefficient rows, got " +
                     std::to_string(coeffs_.rows()));
  }
  if (coeffs_.cols() == 0) throw UsageError("oracle needs at least one output column");
  for (double c : coeffs_.data()) {
    if (!std::isfinite(c)) throw UsageError("oracle coefficients must be finite");
  }
  if (kernel_.shape == KernelShape::CubicBump) solve_cubic_coefficients(kernel_.inflection_slope);
}

PiecewiseOracle PiecewiseOracle::box(const TargetSamples& samples) {
  return {samples.grid(), Kernel::box(), samples.values()};
}

PiecewiseOracle PiecewiseOracle::triangle(const TargetSamples& samples) {
  return {samples.grid(), Kernel::triangle(), samples.values()};
}

PiecewiseOracle PiecewiseOracle::coupled_bump(const TargetSamples& samples, double inflection_slope) {
  return {samples.grid(), Kernel::cubic_bump(inflection_slope), solve_bump_coupling(samples).g};
}

PiecewiseOracle PiecewiseOracle::spaced_bump(const TargetSamples& samples, double inflection_slope) {
  if (samples.grid().n() % 2 != 0) throw UsageError("spaced design requires even N");
  const Matrix& f = samples.values();
  Matrix even(f.rows() / 2 + 1, f.cols());
  for (std::size_t r = 0; r < even.rows(); ++r) {
    for (std::size_t k = 0; k < f.cols(); ++k) even(r, k) = f(2 * r, k);
  }
  return {samples.grid(), Kernel::cubic_bump(inflection_slope), std::move(even),
          KnotSpacing::EveryOtherKnot};
}

int PiecewiseOracle::knot_of_row(std::size_t row) const noexcept {
  const int stride = spacing_ == KnotSpacing::EveryOtherKnot ? 2 : 1;
  return static_cast<int>(row) * stride;
}

double PiecewiseOracle::kernel_value(std::size_t row, double x) const noexcept {
  const int j = knot_of_row(row);
  if (kernel_.shape == KernelShape::Box) {
    // N boxes on N + 1 rows; the last box is closed at x = 1.
    if (j >= grid_.n()) return 0.0;
    if (x == 1.0) return j == grid_.n() - 1 ? 1.0 : 0.0;
  }
  const double u = static_cast<double>(grid_.n()) * x - static_cast<double>(j);
  return eval_kernel(kernel_, u);
}

void PiecewiseOracle::basis_at(double x, std::vector<BasisTerm>& out) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("oracle evaluated outside [0, 1]");
  const int stride = spacing_ == KnotSpacing::EveryOtherKnot ? 2 : 1;
  const int cell = static_cast<int>(std::floor(static_cast<double>(grid_.n()) * x));
  const int reach = kernel_.support_radius() + 1;
  int lo = std::max(0, cell - reach);
  const int hi = std::min(grid_.n(), cell + reach);
  lo += (stride - lo % stride) % stride;
  for (int j = lo; j <= hi; j += stride) {
    const auto row = static_cast<std::size_t>(j / stride);
    const double v = kernel_value(row, x);
    if (v != 0.0) out.push_back({row, v});
  }
}

std::vector<double> PiecewiseOracle::eval(double x) const {
  std::vector<BasisTerm> terms;
  basis_at(x, terms);
  std::vector<double> result(output_dim(), 0.0);
  for (const auto& t : terms) {
    for (std::size_t k = 0; k < result.size(); ++k) result[k] += coeffs_(t.row, k) * t.value;
  }
  return result;
}

std::vector<double> PiecewiseOracle::eval_naive(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("oracle evaluated outside [0, 1]");
  std::vector<double> result(output_dim(), 0.0);
  for (std::size_t row = 0; row < coeffs_.rows(); ++row) {
    const double v = kernel_value(row, x);
    for (std::size_t k = 0; k < result.size(); ++k) result[k] += coeffs_(row, k) * v;
  }
  return result;
}

PiecewiseOracle matching_oracle(Method m, const TargetSamples& samples, double inflection_slope) {
  switch (m) {
    case Method::Constant: return PiecewiseOracle::box(samples);
    case Method::LinearRelu:
    case Method::LinearRamp: return PiecewiseOracle::triangle(samples);
    case Method::Cubic: return PiecewiseOracle::coupled_bump(samples, inflection_slope);
    case Method::CubicSpaced: return PiecewiseOracle::spaced_bump(samples, inflection_slope);
  }
  throw UsageError("unknown construction method");
}

double eval_tensor_product(std::span<const PiecewiseOracle> axes, const NdArray& corner_values,
                           std::span<const double> point) {
  const std::size_t p = axes.size();
  if (p < 1 || p > 3) throw UsageError("tensor product supports 1 to 3 axes");
  if (point.size() != p) throw UsageError("point dimension does not match the number of axes");
  if (corner_values.shape.size() != p) throw UsageError("corner array rank does not match the number of axes");
  std::size_t total = 1;
  for (std::size_t d = 0; d < p; ++d) {
    if (axes[d].kernel().shape != axes[0].kernel().shape) {
      throw UsageError("tensor product axes must share one kernel shape");
    }
    if (corner_values.shape[d] != axes[d].row_count()) {
      throw UsageError("corner array extent " + std::to_string(corner_values.shape[d]) + " on axis " +
                       std::to_string(d) + " does not match " + std::to_string(axes[d].row_count()) +
                       " knots");
    }
    total *= corner_values.shape[d];
  }
  if (corner_values.data.size() != total) throw UsageError("corner array size does not match its shape");

  std::vector<std::vector<BasisTerm>> terms(p);
  for (std::size_t d = 0; d < p; ++d) axes[d].basis_at(point[d], terms[d]);
  for (const auto& t : terms) {
    if (t.empty()) return 0.0;
  }

  // Odometer over the per-axis active kernels, last axis fastest.
  std::vector<std::size_t> pos(p, 0);
  double sum = 0.0;
  for (;;) {
    double weight = 1.0;
    std::size_t flat = 0;
    for (std::size_t d = 0; d < p; ++d) {
      const BasisTerm& t = terms[d][pos[d]];
      weight *= t.value;
      flat = flat * corner_values.shape[d] + t.row;
    }
    sum += corner_values.data[flat] * weight;

    std::size_t d = p;
    while (d > 0) {
      --d;
      if (++pos[d] < terms[d].size()) break;
      pos[d] = 0;
      if (d == 0) return sum;
    }
  }
}

KernelFit fit_kernel_weights(std::span<const double> xs, std::span<const double> ys, const Kernel& kernel,
                             const KnotGrid& grid) {
  const std::size_t knots = grid.knot_count();
  if (xs.size() != ys.size()) throw UsageError("sample x and y lists differ in length");
  if (xs.size() < knots) {
    throw UsageError("kernel fit needs at least " + std::to_string(knots) + " samples, got " +
                     std::to_string(xs.size()));
  }
  for (double y : ys) {
    if (!std::isfinite(y)) throw DomainError("sample value is not finite");
  }

  // Unit-coefficient oracle supplies the kernel columns.
  const PiecewiseOracle basis(grid, kernel, Matrix(knots, 1, 1.0));
  Eigen::MatrixXd normal = Eigen::MatrixXd::Zero(knots, knots);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(knots);
  std::vector<BasisTerm> terms;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    terms.clear();
    basis.basis_at(xs[i], terms);
    for (const auto& a : terms) {
      rhs(a.row) += a.value * ys[i];
      for (const auto& b : terms) normal(a.row, b.row) += a.value * b.value;
    }
  }
  normal.diagonal().array() += kKernelFitRidge;

  Eigen::LLT<Eigen::MatrixXd> llt(normal);
  if (llt.info() != Eigen::Success) throw NumericalError("kernel normal equations are not positive definite");
  const Eigen::VectorXd omega = llt.solve(rhs);
  if (!omega.allFinite()) throw NumericalError("kernel fit produced non-finite weights");

  KernelFit fit{std::vector<double>(omega.data(), omega.data() + omega.size()), kernel, grid, 0.0};
  double sq = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    terms.clear();
    basis.basis_at(xs[i], terms);
    double model = 0.0;
    for (const auto& t : terms) model += fit.omega[t.row] * t.value;
    const double r = ys[i] - model;
    sq += r * r;
  }
  fit.rms_residual = std::sqrt(sq / static_cast<double>(xs.size()));
  return fit;
}

std::vector<double> dense_solve_coupling_column(std::span<const double> f) {
  const auto size = static_cast<Eigen::Index>(f.size());
  if (size == 0) throw UsageError("coupling system needs at least one equation");
  Eigen::MatrixXd a = Eigen::MatrixXd::Identity(size, size);
  for (Eigen::Index i = 0; i + 1 < size; ++i) {
    a(i, i + 1) = 0.5;
    a(i + 1, i) = 0.5;
  }
  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  if (!(lu.rcond() > 1e-14)) throw NumericalError("coupling matrix is numerically singular");
  const Eigen::Map<const Eigen::VectorXd> b(f.data(), size);
  const Eigen::VectorXd g = lu.solve(b);
  return {g.data(), g.data() + g.size()};
}

Matrix dense_solve_coupling(const TargetSamples& samples) {
  const Matrix& f = samples.values();
  Matrix g(f.rows(), f.cols());
  for (std::size_t k = 0; k < f.cols(); ++k) {
    const std::vector<double> col = dense_solve_coupling_column(f.column(k));
    for (std::size_t j = 0; j < col.size(); ++j) g(j, k) = col[j];
  }
  return g;
}

}  // namespace pwmlp
