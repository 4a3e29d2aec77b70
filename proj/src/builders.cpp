#include "pwmlp/builders.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pwmlp/errors.hpp"

namespace pwmlp {

KnotGrid::KnotGrid(int n) : n_(n) {
  if (n < 1) throw UsageError("knot grid needs n >= 1, got " + std::to_string(n));
}

std::vector<double> KnotGrid::knots() const {
  std::vector<double> xs(knot_count());
  for (int j = 0; j <= n_; ++j) xs[j] = knot(j);
  return xs;
}

TargetSamples::TargetSamples(KnotGrid grid, Matrix values) : grid_(grid), values_(std::move(values)) {
  if (values_.rows() != grid_.knot_count()) {
    throw UsageError("expected " + std::to_string(grid_.knot_count()) + " knot samples, got " +
                     std::to_string(values_.rows()));
  }
  if (values_.cols() == 0) throw UsageError("target samples need at least one output dimension");
  for (double v : values_.data()) {
    if (!std::isfinite(v)) throw UsageError("target samples must be finite");
  }
}

double TargetSamples::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_.data()) m = std::max(m, std::abs(v));
  return m;
}

const char* method_name(Method m) noexcept {
  switch (m) {
    case Method::Constant: return "constant";
    case Method::LinearRelu: return "linear-relu";
    case Method::LinearRamp: return "linear-ramp";
    case Method::Cubic: return "cubic";
    case Method::CubicSpaced: return "cubic-spaced";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) noexcept {
  for (Method m : kAllMethods) {
    if (name == method_name(m)) return m;
  }
  return std::nullopt;
}

std::size_t expected_neuron_count(Method m, int n) noexcept {
  const auto knots = static_cast<std::size_t>(n) + 1;
  switch (m) {
    case Method::Constant: return static_cast<std::size_t>(n);
    case Method::LinearRelu: return 4 * knots;
    case Method::LinearRamp: return 2 * knots;
    case Method::Cubic: return 2 * knots;
    case Method::CubicSpaced: return static_cast<std::size_t>(n) + 2;
  }
  return 0;
}

std::vector<double> solve_tridiagonal(std::span<const double> lower, std::span<const double> diag,
                                      std::span<const double> upper, std::span<const double> rhs) {
  const std::size_t size = diag.size();
  if (size == 0 || lower.size() != size || upper.size() != size || rhs.size() != size) {
    throw UsageError("tridiagonal bands and right-hand side must share a nonzero length");
  }
  std::vector<double> c_prime(size);
  std::vector<double> x(size);

  if (diag[0] == 0.0) throw NumericalError("zero pivot in tridiagonal solve at row 0");
  c_prime[0] = upper[0] / diag[0];
  x[0] = rhs[0] / diag[0];

  // Forward sweep
  for (std::size_t i = 1; i < size; ++i) {
    const double pivot = diag[i] - lower[i] * c_prime[i - 1];
    if (pivot == 0.0) throw NumericalError("zero pivot in tridiagonal solve at row " + std::to_string(i));
    c_prime[i] = upper[i] / pivot;
    x[i] = (rhs[i] - lower[i] * x[i - 1]) / pivot;
  }

  // Back substitution
  for (std::size_t i = size - 1; i > 0; --i) x[i - 1] -= c_prime[i - 1] * x[i];
  return x;
}

std::vector<double> solve_coupling_column(std::span<const double> f) {
  // diag 1, off-diagonal 0.5: symmetric positive definite with eigenvalues
  // 1 + cos(k pi / (size + 1)), so the unpivoted sweep never breaks down.
  const std::vector<double> off(f.size(), 0.5);
  const std::vector<double> diag(f.size(), 1.0);
  return solve_tridiagonal(off, diag, off, f);
}

CouplingSolution solve_bump_coupling(const TargetSamples& samples) {
  const Matrix& f = samples.values();
  const std::size_t rows = f.rows();
  CouplingSolution sol{Matrix(rows, f.cols()), 0.0};
  for (std::size_t k = 0; k < f.cols(); ++k) {
    const std::vector<double> fk = f.column(k);
    const std::vector<double> g = solve_coupling_column(fk);
    for (std::size_t j = 0; j < rows; ++j) sol.g(j, k) = g[j];
    for (std::size_t j = 0; j < rows; ++j) {
      const double left = j > 0 ? g[j - 1] : 0.0;
      const double right = j + 1 < rows ? g[j + 1] : 0.0;
      const double r = g[j] + 0.5 * (left + right) - fk[j];
      sol.residual_max = std::max(sol.residual_max, std::abs(r));
    }
  }
  return sol;
}

namespace {

// Assembles a network whose hidden layer is shared by all output taps.
// Tap weights and per-neuron bias contributions are filled per output
// dimension by the caller.
struct Assembly {
  std::vector<HiddenNeuron> neurons;
  std::vector<OutputTap> taps;
  std::vector<CompensatedSum> biases;

  explicit Assembly(std::size_t outputs) : taps(outputs), biases(outputs) {}

  void add_neuron(double weight, double bias, const Activation& act) {
    neurons.push_back({weight, bias, act});
  }

  Network finish(Method m, int n) && {
    for (std::size_t k = 0; k < taps.size(); ++k) taps[k].bias = biases[k].value();
    return Network(std::move(neurons), std::move(taps), NetworkInfo{method_name(m), n});
  }
};

// Input weight h^-1 = n exactly and bias -h^-1 x_j = -j exactly.
double inv_h(const KnotGrid& g) { return static_cast<double>(g.n()); }

void require_even(const KnotGrid& g) {
  if (g.n() % 2 != 0) throw UsageError("spaced design requires even N");
}

}  // namespace

Network build_piecewise_constant(const TargetSamples& samples) {
  const KnotGrid& grid = samples.grid();
  const Matrix& f = samples.values();
  const double a = inv_h(grid);
  Assembly net(f.cols());
  for (int j = 0; j < grid.n(); ++j) net.add_neuron(a, 0.0 - j, Activation::step());
  for (std::size_t k = 0; k < f.cols(); ++k) {
    auto& w = net.taps[k].weights;
    w.reserve(grid.n());
    for (int j = 0; j < grid.n(); ++j) w.push_back(f(j, k) - (j > 0 ? f(j - 1, k) : 0.0));
  }
  return std::move(net).finish(Method::Constant, grid.n());
}

Network build_piecewise_linear_relu(const TargetSamples& samples) {
  const KnotGrid& grid = samples.grid();
  const Matrix& f = samples.values();
  const double a = inv_h(grid);
  const auto relu = Activation::relu();
  Assembly net(f.cols());
  for (int j = 0; j <= grid.n(); ++j) {
    const double jd = j;
    net.add_neuron(a, 1.0 - jd, relu);
    net.add_neuron(a, 0.0 - jd, relu);
    net.add_neuron(-a, jd + 1.0, relu);
    net.add_neuron(-a, jd, relu);
  }
  for (std::size_t k = 0; k < f.cols(); ++k) {
    auto& w = net.taps[k].weights;
    w.reserve(net.neurons.size());
    for (int j = 0; j <= grid.n(); ++j) {
      const double fj = f(j, k);
      w.insert(w.end(), {fj, -fj, fj, -fj});
      for (int rep = 0; rep < 4; ++rep) net.biases[k].add(-0.25 * fj);
    }
  }
  return std::move(net).finish(Method::LinearRelu, grid.n());
}

Network build_piecewise_linear_ramp(const TargetSamples& samples) {
  const KnotGrid& grid = samples.grid();
  const Matrix& f = samples.values();
  const double a = inv_h(grid);
  const auto ramp = Activation::ramp();
  Assembly net(f.cols());
  for (int j = 0; j <= grid.n(); ++j) {
    const double jd = j;
    net.add_neuron(a, 1.0 - jd, ramp);
    net.add_neuron(-a, jd + 1.0, ramp);
  }
  for (std::size_t k = 0; k < f.cols(); ++k) {
    auto& w = net.taps[k].weights;
    w.reserve(net.neurons.size());
    for (int j = 0; j <= grid.n(); ++j) {
      const double fj = f(j, k);
      w.insert(w.end(), {fj, fj});
      net.biases[k].add(-fj);
    }
  }
  return std::move(net).finish(Method::LinearRamp, grid.n());
}

namespace {

// Two cubic neurons per bump centre j: q(h^-1 (x - x_{j-1})) and
// q(h^-1 (x_{j+1} - x)). With tap weight c on both and bias -c the pair
// contributes c * bump(h^-1 (x - x_j)).
Network build_bumps(const KnotGrid& grid, const Matrix& coeffs, int stride, double slope, Method m) {
  const double a = inv_h(grid);
  const auto cubic = Activation::cubic(slope);
  Assembly net(coeffs.cols());
  for (int j = 0; j <= grid.n(); j += stride) {
    const double jd = j;
    net.add_neuron(a, 1.0 - jd, cubic);
    net.add_neuron(-a, jd + 1.0, cubic);
  }
  for (std::size_t k = 0; k < coeffs.cols(); ++k) {
    auto& w = net.taps[k].weights;
    w.reserve(net.neurons.size());
    for (std::size_t row = 0; row < coeffs.rows(); ++row) {
      const double c = coeffs(row, k);
      w.insert(w.end(), {c, c});
      net.biases[k].add(-0.5 * c);
      net.biases[k].add(-0.5 * c);
    }
  }
  return std::move(net).finish(m, grid.n());
}

}  // namespace

Network build_piecewise_cubic_coupled(const TargetSamples& samples, double inflection_slope) {
  solve_cubic_coefficients(inflection_slope);
  const CouplingSolution sol = solve_bump_coupling(samples);
  return build_bumps(samples.grid(), sol.g, 1, inflection_slope, Method::Cubic);
}

Network build_piecewise_cubic_spaced(const TargetSamples& samples, double inflection_slope) {
  require_even(samples.grid());
  solve_cubic_coefficients(inflection_slope);
  const Matrix& f = samples.values();
  Matrix even(f.rows() / 2 + 1, f.cols());
  for (std::size_t row = 0; row < even.rows(); ++row) {
    for (std::size_t k = 0; k < f.cols(); ++k) even(row, k) = f(2 * row, k);
  }
  return build_bumps(samples.grid(), even, 2, inflection_slope, Method::CubicSpaced);
}

Network build_network(Method m, const TargetSamples& samples, double inflection_slope) {
  switch (m) {
    case Method::Constant: return build_piecewise_constant(samples);
    case Method::LinearRelu: return build_piecewise_linear_relu(samples);
    case Method::LinearRamp: return build_piecewise_linear_ramp(samples);
    case Method::Cubic: return build_piecewise_cubic_coupled(samples, inflection_slope);
    case Method::CubicSpaced: return build_piecewise_cubic_spaced(samples, inflection_slope);
  }
  throw UsageError("unknown construction method");
}

}  // namespace pwmlp
