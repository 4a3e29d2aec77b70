#include "pwmlp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "pwmlp/errors.hpp"
#include "pwmlp/format.hpp"

namespace pwmlp {

std::vector<double> uniform_grid(std::size_t size) {
  if (size < 2) throw UsageError("evaluation grid needs at least 2 points");
  std::vector<double> xs(size);
  const double last = static_cast<double>(size - 1);
  for (std::size_t i = 0; i < size; ++i) xs[i] = static_cast<double>(i) / last;
  return xs;
}

ErrorSummary measure_error(const ScalarFunction& approx, const ScalarFunction& target, std::size_t grid_size) {
  const auto xs = uniform_grid(grid_size);
  ErrorSummary s;
  s.grid_size = grid_size;
  double sq = 0.0;
  for (double x : xs) {
    const double a = approx(x);
    const double t = target(x);
    if (!std::isfinite(a) || !std::isfinite(t)) {
      throw NumericalError("non-finite evaluation at x = " + format_double(x));
    }
    const double e = std::abs(a - t);
    if (e > s.sup_error) {
      s.sup_error = e;
      s.worst_x = x;
    }
    sq += e * e;
  }
  s.l2_error = std::sqrt(sq / static_cast<double>(grid_size));
  return s;
}

EquivalenceReport verify_equivalence(const Network& net, const PiecewiseOracle& model, std::size_t grid_size,
                                     double tol) {
  if (net.output_dim() != model.output_dim()) {
    throw UsageError("network has " + std::to_string(net.output_dim()) + " outputs, oracle has " +
                     std::to_string(model.output_dim()));
  }
  const auto xs = uniform_grid(grid_size);
  const Matrix outputs = net.forward_grid(xs);
  EquivalenceReport r;
  r.tolerance = tol;
  r.grid_size = grid_size;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto expected = model.eval(xs[i]);
    for (std::size_t k = 0; k < expected.size(); ++k) {
      const double d = std::abs(outputs(i, k) - expected[k]);
      if (!(d <= r.max_deviation)) {
        r.max_deviation = d;
        r.worst_x = xs[i];
        r.worst_output = k;
      }
    }
  }
  r.passed = r.max_deviation <= tol;
  return r;
}

OrderFit fit_loglog_order(std::span<const int> n_values, std::span<const double> errors) {
  if (n_values.size() != errors.size() || n_values.size() < 2) {
    throw UsageError("order fit needs at least two (N, error) pairs");
  }
  const auto m = static_cast<double>(n_values.size());
  double mx = 0.0, my = 0.0;
  std::vector<double> lx(n_values.size()), ly(n_values.size());
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (!(errors[i] > 0.0)) throw DomainError("order fit needs positive errors");
    lx[i] = std::log(static_cast<double>(n_values[i]));
    ly[i] = std::log(errors[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw UsageError("order fit needs distinct N values");
  const double slope = sxy / sxx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double r = ly[i] - (my + slope * (lx[i] - mx));
    ss_res += r * r;
  }
  OrderFit fit;
  fit.order = -slope;
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

ConvergenceReport estimate_order(Method method, const Target& target, std::span<const int> n_values,
                                 std::size_t grid_size, double inflection_slope, ErrorRoute route) {
  if (n_values.size() < 3) throw UsageError("convergence sweep needs at least 3 N values");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 4) throw UsageError("convergence sweep needs N >= 4");
    if (i > 0 && n_values[i] <= n_values[i - 1]) throw UsageError("N values must be strictly increasing");
    if (method == Method::CubicSpaced && n_values[i] % 2 != 0) {
      throw UsageError("spaced design requires even N");
    }
  }
  solve_cubic_coefficients(inflection_slope);

  ConvergenceReport report;
  report.method = method;
  report.target = std::string(target.name);
  report.inflection_slope = inflection_slope;
  report.grid_size = grid_size;
  report.n_values.assign(n_values.begin(), n_values.end());

  const ScalarFunction f = target.value;
  const auto xs = uniform_grid(grid_size);
  double f_scale = 1.0;
  for (double x : xs) f_scale = std::max(f_scale, std::abs(f(x)));

  for (int n : n_values) {
    const TargetSamples samples = sample_function(KnotGrid(n), target.value);
    ErrorSummary err;
    if (route == ErrorRoute::Network) {
      const Network net = build_network(method, samples, inflection_slope);
      err = measure_error([&net](double x) { return net.forward(x)[0]; }, f, grid_size);
    } else {
      const PiecewiseOracle model = matching_oracle(method, samples, inflection_slope);
      err = measure_error([&model](double x) { return model.eval(x)[0]; }, f, grid_size);
    }
    report.sup_errors.push_back(err.sup_error);
    report.l2_errors.push_back(err.l2_error);
  }

  const double exact_bound = kExactReproductionThreshold * f_scale;
  report.exact_reproduction = std::any_of(report.sup_errors.begin(), report.sup_errors.end(),
                                          [exact_bound](double e) { return e <= exact_bound; });
  if (!report.exact_reproduction) {
    const OrderFit fit = fit_loglog_order(report.n_values, report.sup_errors);
    report.fitted_order = fit.order;
    report.r_squared = fit.r_squared;
  }
  return report;
}

std::string convergence_csv(const ConvergenceReport& report) {
  std::string out = "n,h,sup_error,l2_error\n";
  for (std::size_t i = 0; i < report.n_values.size(); ++i) {
    const int n = report.n_values[i];
    out += std::to_string(n) + "," + format_double(1.0 / n) + "," + format_double(report.sup_errors[i]) + "," +
           format_double(report.l2_errors[i]) + "\n";
  }
  return out;
}

std::string convergence_json(const ConvergenceReport& report) {
  nlohmann::ordered_json j;
  j["method"] = method_name(report.method);
  j["target"] = report.target;
  if (report.method == Method::Cubic || report.method == Method::CubicSpaced) {
    j["inflection_slope"] = report.inflection_slope;
  }
  j["grid_size"] = report.grid_size;
  j["n_values"] = report.n_values;
  j["sup_errors"] = report.sup_errors;
  j["exact_reproduction"] = report.exact_reproduction;
  j["order_applicable"] = report.fitted_order.has_value();
  if (report.fitted_order) {
    j["fitted_order"] = *report.fitted_order;
    j["r_squared"] = report.r_squared;
  } else {
    j["fitted_order"] = nullptr;
    j["r_squared"] = nullptr;
  }
  return j.dump(2) + "\n";
}

}  // namespace pwmlp
