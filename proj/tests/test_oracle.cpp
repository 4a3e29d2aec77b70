#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "pwmlp/errors.hpp"
#include "pwmlp/oracle.hpp"
#include "reference.hpp"

using namespace pwmlp;

namespace {

double sin2pi(double x) { return std::sin(2.0 * std::numbers::pi * x) + 0.5 * x; }

bool bitwise_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("kernel values") {
  CHECK(eval_kernel(Kernel::triangle(), 0.0) == 1.0);
  CHECK(eval_kernel(Kernel::triangle(), 0.5) == 0.5);
  CHECK(eval_kernel(Kernel::triangle(), -1.0) == 0.0);
  CHECK(eval_kernel(Kernel::box(), 0.0) == 1.0);
  CHECK(eval_kernel(Kernel::box(), 1.0) == 0.0);
  CHECK(eval_kernel(Kernel::box(), -1e-300) == 0.0);
  CHECK(eval_kernel(Kernel::cubic_bump(0.75), 1.0) == 0.5);
  CHECK(eval_kernel(Kernel::cubic_bump(0.75), -1.0) == 0.5);
  CHECK(eval_kernel(Kernel::cubic_bump(0.75), 0.0) == 1.0);
  CHECK(eval_kernel(Kernel::cubic_bump(0.75), 2.0) == 0.0);
  CHECK(eval_kernel(Kernel::cubic_bump(0.75), -2.5) == 0.0);
  CHECK_THROWS_AS(Kernel::cubic_bump(0.9), DomainError);
}

TEST_CASE("bump kernel equals the shifted cubic pair and is symmetric") {
  for (double s : {0.0, 0.25, 0.5, 0.75}) {
    const Kernel k = Kernel::cubic_bump(s);
    for (int i = 0; i <= 4000; ++i) {
      const double u = -3.0 + 6.0 * i / 4000.0;
      CHECK(std::abs(eval_kernel(k, u) - reference::bump(u, s)) <= 1e-15);
      CHECK(std::abs(eval_kernel(k, u) - eval_kernel(k, -u)) <= 1e-14);
    }
  }
}

TEST_CASE("triangle kernels form a partition of unity on [0, 1]") {
  for (int n : {1, 5, 16, 33}) {
    Matrix ones(n + 1, 1, 1.0);
    const PiecewiseOracle o(KnotGrid(n), Kernel::triangle(), ones);
    for (int i = 0; i <= 10000; ++i) CHECK(std::abs(o.eval(i / 10000.0)[0] - 1.0) <= 1e-14);
  }
}

TEST_CASE("box kernels tile [0, 1]") {
  const int n = 7;
  Matrix ones(n + 1, 1, 1.0);
  const PiecewiseOracle o(KnotGrid(n), Kernel::box(), ones);
  std::vector<BasisTerm> terms;
  for (int i = 0; i <= 10000; ++i) {
    terms.clear();
    o.basis_at(i / 10000.0, terms);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].value == 1.0);
  }
  terms.clear();
  o.basis_at(1.0, terms);
  CHECK(terms[0].row == static_cast<std::size_t>(n - 1));
}

TEST_CASE("oracle examples") {
  SUBCASE("box oracle of f(x) = x, N = 2") {
    const auto o = PiecewiseOracle::box(sample_function(KnotGrid(2), [](double x) { return x; }));
    CHECK(o.eval(0.75)[0] == 0.5);
    CHECK(o.eval(1.0)[0] == 0.5);
    CHECK(o.eval(0.49)[0] == 0.0);
  }
  SUBCASE("triangle oracle interpolates knots") {
    const auto s = sample_function(KnotGrid(9), sin2pi);
    const auto o = PiecewiseOracle::triangle(s);
    for (int j = 0; j <= 9; ++j) CHECK(o.eval(s.grid().knot(j))[0] == doctest::Approx(s.values()(j, 0)).epsilon(1e-15));
  }
  SUBCASE("coupled bump oracle with g = (1, 0, 1)") {
    const auto o = PiecewiseOracle::coupled_bump(sample_function(KnotGrid(2), [](double) { return 1.0; }));
    CHECK(std::abs(o.eval(0.5)[0] - 1.0) <= 1e-15);
  }
  SUBCASE("outside [0, 1]") {
    const auto o = PiecewiseOracle::triangle(sample_function(KnotGrid(2), sin2pi));
    CHECK_THROWS_AS(o.eval(-0.01), DomainError);
    CHECK_THROWS_AS(o.eval(1.01), DomainError);
    CHECK_THROWS_AS(o.eval(std::nan("")), DomainError);
  }
  SUBCASE("shape checks") {
    CHECK_THROWS_AS(PiecewiseOracle(KnotGrid(4), Kernel::triangle(), Matrix(4, 1)), UsageError);
    CHECK_THROWS_AS(PiecewiseOracle(KnotGrid(5), Kernel::triangle(), Matrix(3, 1), KnotSpacing::EveryOtherKnot),
                    UsageError);
    CHECK_NOTHROW(PiecewiseOracle(KnotGrid(4), Kernel::cubic_bump(), Matrix(3, 1), KnotSpacing::EveryOtherKnot));
  }
}

TEST_CASE("localized evaluation equals the naive sum") {
  std::mt19937_64 rng(17);
  for (int n : {2, 6, 31, 64}) {
    const auto c = reference::random_values(rng, n + 1);
    Matrix m(n + 1, 1);
    for (int j = 0; j <= n; ++j) m(j, 0) = c[j];
    const TargetSamples s(KnotGrid(n), m);
    std::vector<PiecewiseOracle> oracles{PiecewiseOracle::box(s), PiecewiseOracle::triangle(s),
                                         PiecewiseOracle::coupled_bump(s, 0.6)};
    if (n % 2 == 0) oracles.push_back(PiecewiseOracle::spaced_bump(s, 0.75));
    for (const auto& o : oracles) {
      for (int i = 0; i <= 3000; ++i) {
        const double x = i / 3000.0;
        CHECK(std::abs(o.eval(x)[0] - o.eval_naive(x)[0]) <= 1e-14);
      }
    }
  }
}

TEST_CASE("coupled bump oracle interpolates f at every knot") {
  for (int n : {3, 16, 64}) {
    const auto s = sample_function(KnotGrid(n), sin2pi);
    const auto o = PiecewiseOracle::coupled_bump(s);
    for (int j = 0; j <= n; ++j) CHECK(std::abs(o.eval(s.grid().knot(j))[0] - s.values()(j, 0)) <= 1e-10);
  }
}

TEST_CASE("oracles agree with the brute-force references") {
  const auto s = sample_function(KnotGrid(20), sin2pi);
  const auto f = s.values().column(0);
  const auto box = PiecewiseOracle::box(s);
  const auto tri = PiecewiseOracle::triangle(s);
  const auto bump = PiecewiseOracle::coupled_bump(s);
  const auto g = reference::coupling_solve(f);
  for (int i = 0; i <= 10000; ++i) {
    const double x = i / 10000.0;
    CHECK(box.eval(x)[0] == reference::piecewise_constant(f, x));
    CHECK(std::abs(tri.eval(x)[0] - reference::piecewise_linear(f, x)) <= 1e-14);
    CHECK(std::abs(bump.eval(x)[0] - reference::bump_sum(g, 20, 1, 0.75, x)) <= 1e-13);
  }
}

TEST_CASE("tensor product") {
  SUBCASE("p = 1 reduces to the oracle bitwise") {
    const auto s = sample_function(KnotGrid(11), sin2pi);
    for (const auto& o : {PiecewiseOracle::box(s), PiecewiseOracle::triangle(s), PiecewiseOracle::coupled_bump(s)}) {
      const NdArray corner{{o.row_count()}, o.coefficients().data()};
      for (int i = 0; i <= 1000; ++i) {
        const double x = i / 1000.0;
        const double p = eval_tensor_product(std::span(&o, 1), corner, std::vector<double>{x});
        CHECK(bitwise_equal(p, o.eval(x)[0]));
      }
    }
  }
  SUBCASE("bilinear reproduces x + 2y") {
    const KnotGrid g(3);
    const auto axis = PiecewiseOracle::triangle(sample_function(g, [](double) { return 0.0; }));
    NdArray corner{{4, 4}, {}};
    for (int i = 0; i <= 3; ++i) {
      for (int j = 0; j <= 3; ++j) corner.data.push_back(g.knot(i) + 2.0 * g.knot(j));
    }
    const std::vector<PiecewiseOracle> axes{axis, axis};
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
      const std::vector<double> pt{u(rng), u(rng)};
      CHECK(std::abs(eval_tensor_product(axes, corner, pt) - (pt[0] + 2.0 * pt[1])) <= 1e-12);
    }
  }
  SUBCASE("box kernel constant") {
    const KnotGrid g(5);
    const auto axis = PiecewiseOracle::box(sample_function(g, [](double) { return 0.0; }));
    const NdArray corner{{6, 6}, std::vector<double>(36, 3.0)};
    const std::vector<PiecewiseOracle> axes{axis, axis};
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) {
        CHECK(eval_tensor_product(axes, corner, std::vector<double>{i / 50.0, j / 50.0}) == 3.0);
      }
    }
  }
  SUBCASE("trilinear on mixed grids") {
    const auto ax = PiecewiseOracle::triangle(sample_function(KnotGrid(2), [](double) { return 0.0; }));
    const auto ay = PiecewiseOracle::triangle(sample_function(KnotGrid(4), [](double) { return 0.0; }));
    const auto az = PiecewiseOracle::triangle(sample_function(KnotGrid(3), [](double) { return 0.0; }));
    NdArray corner{{3, 5, 4}, {}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 4; ++k) corner.data.push_back(1.0 + i / 2.0 - j / 4.0 + 3.0 * k / 3.0);
    const std::vector<PiecewiseOracle> axes{ax, ay, az};
    const std::vector<double> pt{0.3, 0.7, 0.55};
    CHECK(std::abs(eval_tensor_product(axes, corner, pt) - (1.0 + 0.3 - 0.7 + 3.0 * 0.55)) <= 1e-12);
  }
  SUBCASE("shape errors") {
    const auto axis = PiecewiseOracle::triangle(sample_function(KnotGrid(3), sin2pi));
    const std::vector<PiecewiseOracle> two{axis, axis};
    CHECK_THROWS_AS(eval_tensor_product(two, NdArray{{4, 3}, std::vector<double>(12)}, std::vector<double>{0.1, 0.2}),
                    UsageError);
    CHECK_THROWS_AS(eval_tensor_product(two, NdArray{{4, 4}, std::vector<double>(16)}, std::vector<double>{0.1}),
                    UsageError);
    const std::vector<PiecewiseOracle> four{axis, axis, axis, axis};
    CHECK_THROWS_AS(eval_tensor_product(four, NdArray{{4, 4, 4, 4}, std::vector<double>(256)},
                                        std::vector<double>{0.1, 0.1, 0.1, 0.1}),
                    UsageError);
    const auto box = PiecewiseOracle::box(sample_function(KnotGrid(3), sin2pi));
    const std::vector<PiecewiseOracle> mixed{axis, box};
    CHECK_THROWS_AS(
        eval_tensor_product(mixed, NdArray{{4, 4}, std::vector<double>(16)}, std::vector<double>{0.1, 0.2}),
        UsageError);
  }
}

TEST_CASE("kernel weight fitting") {
  SUBCASE("triangle expansion is recovered") {
    std::mt19937_64 rng(21);
    const KnotGrid g(12);
    const auto c = reference::random_values(rng, 13);
    std::vector<double> xs(300), ys(300);
    for (int i = 0; i < 300; ++i) {
      xs[i] = i / 299.0;
      ys[i] = reference::piecewise_linear(c, xs[i]);
    }
    const auto fit = fit_kernel_weights(xs, ys, Kernel::triangle(), g);
    REQUIRE(fit.omega.size() == 13);
    for (int j = 0; j <= 12; ++j) CHECK(std::abs(fit.omega[j] - c[j]) <= 1e-8);
    CHECK(fit.rms_residual <= 1e-10);
  }
  SUBCASE("zero data") {
    std::vector<double> xs(40), ys(40, 0.0);
    for (int i = 0; i < 40; ++i) xs[i] = i / 39.0;
    const auto fit = fit_kernel_weights(xs, ys, Kernel::cubic_bump(), KnotGrid(8));
    for (double w : fit.omega) CHECK(w == 0.0);
    CHECK(fit.rms_residual == 0.0);
  }
  SUBCASE("box plateaus") {
    const KnotGrid g(4);
    const std::vector<double> plateau{2.0, -1.0, 0.5, 4.0};
    std::vector<double> xs, ys;
    for (int i = 0; i < 200; ++i) {
      const double x = i / 199.0;
      xs.push_back(x);
      ys.push_back(reference::piecewise_constant({2.0, -1.0, 0.5, 4.0, 0.0}, x));
    }
    const auto fit = fit_kernel_weights(xs, ys, Kernel::box(), g);
    for (int j = 0; j < 4; ++j) CHECK(std::abs(fit.omega[j] - plateau[j]) <= 1e-8);
    CHECK(fit.omega[4] == 0.0);
  }
  SUBCASE("underdetermined and invalid input") {
    const std::vector<double> xs{0.0, 0.5, 1.0}, ys{1.0, 2.0, 3.0};
    CHECK_THROWS_AS(fit_kernel_weights(xs, ys, Kernel::triangle(), KnotGrid(8)), UsageError);
    const std::vector<double> bad_x{0.0, 0.5, 1.5};
    CHECK_THROWS_AS(fit_kernel_weights(bad_x, ys, Kernel::triangle(), KnotGrid(2)), DomainError);
  }
}

TEST_CASE("dense coupling oracle") {
  CHECK(dense_solve_coupling_column(std::vector<double>{2.5}) == std::vector<double>{2.5});
  const auto g = dense_solve_coupling(sample_function(KnotGrid(2), [](double) { return 1.0; }));
  CHECK(g(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(g(1, 0)) <= 1e-15);
  CHECK(g(2, 0) == doctest::Approx(1.0).epsilon(1e-15));

  std::mt19937_64 rng(1234);
  for (int n = 1; n <= 64; ++n) {
    const auto f = reference::random_values(rng, n + 1);
    Matrix m(n + 1, 1);
    for (int j = 0; j <= n; ++j) m(j, 0) = f[j];
    const TargetSamples s(KnotGrid(n), m);
    const auto dense = dense_solve_coupling(s);
    const auto thomas = solve_bump_coupling(s);
    const auto gauss = reference::coupling_solve(f);
    for (int j = 0; j <= n; ++j) {
      CHECK(std::abs(dense(j, 0) - thomas.g(j, 0)) <= 1e-10);
      CHECK(std::abs(dense(j, 0) - gauss[j]) <= 1e-10);
    }
  }
}
