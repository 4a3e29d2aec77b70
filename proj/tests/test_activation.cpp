#include <doctest.h>

#include <cmath>
#include <limits>

#include "pwmlp/activation.hpp"
#include "pwmlp/errors.hpp"

using namespace pwmlp;

TEST_CASE("cubic coefficients for the smooth default slope") {
  // q'(+-1) = 3 a3 + a1 = 0 together with a1 + a3 = 0.5 gives a1 = 0.75, a3 = -0.25.
  const auto c = solve_cubic_coefficients(0.75);
  CHECK(c.a0 == 0.5);
  CHECK(c.a1 == 0.75);
  CHECK(c.a2 == 0.0);
  CHECK(c.a3 == -0.25);
  CHECK(3.0 * c.a3 + c.a1 == 0.0);
}

TEST_CASE("cubic coefficients for the affine slope") {
  const auto c = solve_cubic_coefficients(0.5);
  CHECK(c.a0 == 0.5);
  CHECK(c.a1 == 0.5);
  CHECK(c.a2 == 0.0);
  CHECK(c.a3 == 0.0);
  const auto q = Activation::cubic(0.5);
  CHECK(q(0.3) == doctest::Approx(0.65).epsilon(1e-15));
}

TEST_CASE("cubic coefficient constraints hold for every valid slope") {
  for (double s = 0.0; s <= 0.75; s += 0.0625) {
    const auto c = solve_cubic_coefficients(s);
    CHECK(std::abs(c.a1 + c.a3 - 0.5) <= 1e-15);
    CHECK(c.a2 == 0.0);
    CHECK(c.a0 == 0.5);
    const auto q = Activation::cubic(s);
    CHECK(q(-1.0) == 0.0);
    CHECK(q(0.0) == 0.5);
    CHECK(q(1.0) == 1.0);
  }
}

TEST_CASE("slopes outside [0, 0.75] are rejected") {
  CHECK_THROWS_AS(solve_cubic_coefficients(-1e-12), DomainError);
  CHECK_THROWS_AS(solve_cubic_coefficients(0.7500001), DomainError);
  CHECK_THROWS_AS(solve_cubic_coefficients(std::nan("")), DomainError);
  CHECK_THROWS_WITH(Activation::cubic(2.0), "non-monotone cubic");
}

TEST_CASE("activation values") {
  CHECK(eval_activation(Activation::step(), 0.0) == 1.0);
  CHECK(eval_activation(Activation::step(), -1e-300) == 0.0);
  CHECK(eval_activation(Activation::ramp(), 0.5) == 0.5);
  CHECK(eval_activation(Activation::ramp(), 7.0) == 1.0);
  CHECK(eval_activation(Activation::ramp(), -7.0) == 0.0);
  CHECK(eval_activation(Activation::relu(), -3.0) == 0.0);
  CHECK(eval_activation(Activation::relu(), 2.5) == 2.5);
  CHECK(eval_activation(Activation::cubic(0.75), 1.0) == 1.0);
  CHECK(eval_activation(Activation::cubic(0.75), 5.0) == 1.0);
  CHECK(eval_activation(Activation::cubic(0.75), -5.0) == 0.0);
}

TEST_CASE("non-finite activation input") {
  CHECK_THROWS_AS(eval_activation(Activation::relu(), std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(eval_activation(Activation::cubic(), std::nan("")), DomainError);
}

TEST_CASE("cubic anti-symmetry, continuity and monotonicity") {
  for (double s : {0.0, 0.1875, 0.375, 0.5, 0.5625, 0.75}) {
    const auto q = Activation::cubic(s);
    const auto& c = *q.cubic_coefficients();
    for (int i = 0; i <= 1000; ++i) {
      const double x = -2.0 + 4.0 * i / 1000.0;
      CHECK(std::abs(q(x) + q(-x) - 1.0) <= 1e-12);
    }
    // Interior polynomial at the plateau boundaries.
    const double at_minus = ((c.a3 * -1.0 + c.a2) * -1.0 + c.a1) * -1.0 + c.a0;
    const double at_plus = ((c.a3 + c.a2) + c.a1) + c.a0;
    CHECK(std::abs(at_minus - 0.0) <= 1e-15);
    CHECK(std::abs(at_plus - 1.0) <= 1e-15);

    double prev = q(-1.5);
    for (int i = 1; i <= 30000; ++i) {
      const double x = -1.5 + 3.0 * i / 30000.0;
      const double v = q(x);
      CHECK(prev <= v + 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("ramp equals relu up to 1") {
  const auto ramp = Activation::ramp();
  const auto relu = Activation::relu();
  for (int i = 0; i <= 400; ++i) {
    const double x = -3.0 + 4.0 * i / 400.0;
    CHECK(ramp(x) == relu(x));
  }
}

TEST_CASE("activation kind names round trip") {
  for (auto k : {ActivationKind::Step, ActivationKind::Relu, ActivationKind::Ramp, ActivationKind::Cubic}) {
    CHECK(parse_activation_kind(activation_kind_name(k)) == k);
  }
  CHECK_FALSE(parse_activation_kind("quadratic").has_value());
}
