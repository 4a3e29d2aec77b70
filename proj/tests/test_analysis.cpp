#include <doctest.h>

#include <cmath>
#include <numbers>

#include <json.hpp>

#include "pwmlp/analysis.hpp"
#include "pwmlp/errors.hpp"

using namespace pwmlp;

namespace {

const Target& target(const char* name) {
  const Target* t = find_target(name);
  REQUIRE(t != nullptr);
  return *t;
}

}  // namespace

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(5);
  CHECK(g == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK_THROWS_AS(uniform_grid(1), UsageError);
}

TEST_CASE("measure_error basics") {
  const ScalarFunction f = [](double x) { return x * x; };
  const auto same = measure_error(f, f, 101);
  CHECK(same.sup_error == 0.0);
  CHECK(same.l2_error == 0.0);
  const auto unit = measure_error([](double) { return 0.0; }, [](double) { return 1.0; }, 11);
  CHECK(unit.sup_error == 1.0);
  CHECK(unit.l2_error == 1.0);
  CHECK_THROWS_AS(measure_error(f, f, 1), UsageError);
  CHECK_THROWS_WITH_AS(measure_error([](double x) { return x > 0.5 ? std::nan("") : 0.0; }, f, 5),
                       "non-finite evaluation at x = 0.75", NumericalError);
}

TEST_CASE("piecewise-constant error of sin(2 pi x) tracks h max|f'|") {
  const auto f = [](double x) { return std::sin(2.0 * std::numbers::pi * x); };
  const auto net = build_piecewise_constant(sample_function(KnotGrid(64), f));
  const auto err = measure_error([&](double x) { return net.forward(x)[0]; }, f, kDefaultGridSize);
  const double bound = 2.0 * std::numbers::pi / 64.0;
  CHECK(std::abs(err.sup_error - bound) <= 0.25 * bound);
}

TEST_CASE("verify_equivalence") {
  const auto s = sample_function(KnotGrid(32), target("sin2pi").value);
  SUBCASE("constant network vs box oracle") {
    const auto r = verify_equivalence(build_piecewise_constant(s), PiecewiseOracle::box(s), 10001, 1e-9);
    CHECK(r.passed);
  }
  SUBCASE("ReLU network vs triangle oracle") {
    const auto r = verify_equivalence(build_piecewise_linear_relu(s), PiecewiseOracle::triangle(s), 10001, 1e-9);
    CHECK(r.passed);
    CHECK(r.max_deviation <= 1e-13);
  }
  SUBCASE("ReLU network vs box oracle fails") {
    const auto r = verify_equivalence(build_piecewise_linear_relu(s), PiecewiseOracle::box(s), 10001, 1e-9);
    CHECK_FALSE(r.passed);
    CHECK(r.max_deviation > 0.01);
    CHECK(r.worst_x >= 0.0);
    CHECK(r.worst_x <= 1.0);
  }
  SUBCASE("dimension mismatch") {
    Matrix two(33, 2);
    const TargetSamples s2(s.grid(), two);
    CHECK_THROWS_AS(verify_equivalence(build_piecewise_constant(s2), PiecewiseOracle::box(s), 101, 1e-9), UsageError);
  }
}

TEST_CASE("log-log order fit") {
  const std::vector<int> ns{10, 20, 40, 80};
  std::vector<double> errs;
  for (int n : ns) errs.push_back(3.0 * std::pow(n, -2.0));
  const auto fit = fit_loglog_order(ns, errs);
  CHECK(fit.order == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_loglog_order(ns, std::vector<double>{1.0, 0.0, 1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(fit_loglog_order(std::vector<int>{4}, std::vector<double>{1.0}), UsageError);
}

TEST_CASE("convergence orders on sin2pi") {
  const std::vector<int> ns{16, 32, 64, 128};
  const auto& f = target("sin2pi");

  const auto constant = estimate_order(Method::Constant, f, ns);
  REQUIRE(constant.fitted_order.has_value());
  CHECK(*constant.fitted_order >= 0.9);
  CHECK(*constant.fitted_order <= 1.1);
  CHECK(constant.r_squared >= 0.98);

  for (Method m : {Method::LinearRelu, Method::LinearRamp}) {
    const auto r = estimate_order(m, f, ns);
    REQUIRE(r.fitted_order.has_value());
    CHECK(*r.fitted_order >= 1.9);
    CHECK(*r.fitted_order <= 2.1);
    CHECK(r.r_squared >= 0.98);
  }
}

TEST_CASE("network and oracle routes give the same order") {
  const std::vector<int> ns{16, 32, 64};
  for (Method m : kAllMethods) {
    const auto a = estimate_order(m, target("runge"), ns, 2001, 0.75, ErrorRoute::Network);
    const auto b = estimate_order(m, target("runge"), ns, 2001, 0.75, ErrorRoute::Oracle);
    REQUIRE(a.fitted_order.has_value());
    REQUIRE(b.fitted_order.has_value());
    CHECK(std::abs(*a.fitted_order - *b.fitted_order) <= 0.05);
  }
}

TEST_CASE("sup error does not increase with N for the registered smooth targets") {
  const std::vector<int> ns{8, 16, 32, 64};
  for (const char* name : {"sin2pi", "runge"}) {
    for (Method m : {Method::Constant, Method::LinearRelu, Method::LinearRamp}) {
      const auto r = estimate_order(m, target(name), ns, 4001);
      for (std::size_t i = 1; i < r.sup_errors.size(); ++i) CHECK(r.sup_errors[i] <= r.sup_errors[i - 1]);
    }
  }
}

TEST_CASE("exact reproduction is flagged instead of fitted") {
  const std::vector<int> ns{4, 8, 16};
  const auto r = estimate_order(Method::LinearRelu, target("affine"), ns, 1001);
  CHECK(r.exact_reproduction);
  CHECK_FALSE(r.fitted_order.has_value());
  const auto j = nlohmann::json::parse(convergence_json(r));
  CHECK(j["fitted_order"].is_null());
  CHECK(j["exact_reproduction"] == true);
}

TEST_CASE("convergence sweep preconditions") {
  const auto& f = target("sin2pi");
  CHECK_THROWS_AS(estimate_order(Method::Constant, f, std::vector<int>{8, 16}), UsageError);
  CHECK_THROWS_AS(estimate_order(Method::Constant, f, std::vector<int>{2, 8, 16}), UsageError);
  CHECK_THROWS_AS(estimate_order(Method::Constant, f, std::vector<int>{16, 8, 32}), UsageError);
  CHECK_THROWS_AS(estimate_order(Method::CubicSpaced, f, std::vector<int>{8, 15, 32}), UsageError);
  CHECK_THROWS_AS(estimate_order(Method::Cubic, f, std::vector<int>{8, 16, 32}, 101, 0.9), DomainError);
}

TEST_CASE("convergence CSV") {
  const auto r = estimate_order(Method::Constant, target("sin2pi"), std::vector<int>{4, 8, 16}, 101);
  const std::string csv = convergence_csv(r);
  CHECK(csv.rfind("n,h,sup_error,l2_error\n4,0.25,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
