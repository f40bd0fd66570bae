#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slitnet/actions.hpp"
#include "slitnet/quadrature.hpp"

using namespace slitnet;

TEST_CASE("constants and degree-1 polynomials integrate exactly") {
  CHECK(composite_simpson([](double) { return 1.0; }, 0.0, 3.0, 6) == 3.0);
  CHECK(composite_simpson([](double t) { return t; }, 0.0, 2.0, 2) == 2.0);
}

TEST_CASE("simpson is exact on cubics") {
  const auto cubic = [](double t) { return t * t * t - 2.0 * t * t + 0.5; };
  // antiderivative t^4/4 - 2 t^3/3 + t/2 on [0, 2]
  const double exact = 4.0 - 16.0 / 3.0 + 1.0;
  for (const std::size_t n : {2u, 4u, 10u}) {
    CHECK(composite_simpson(cubic, 0.0, 2.0, n) ==
          doctest::Approx(exact).epsilon(1e-14));
  }
}

TEST_CASE("cosh integral matches its antiderivative") {
  const double exact = std::sinh(2.0) / 2.0;
  const double got =
      composite_simpson([](double t) { return std::cosh(2.0 * t); }, 0.0, 1.0,
                        100000);
  CHECK(std::abs(got - exact) / exact < 1e-10);
}

TEST_CASE("richardson extrapolation sharpens a coarse rule") {
  const auto f = [](double t) { return std::exp(t) * std::sin(3.0 * t); };
  // oracle by very fine quadrature
  const double reference = composite_simpson(f, 0.0, 2.0, 1u << 20);
  QuadratureConfig coarse{16, false};
  QuadratureConfig extrapolated{16, true};
  const double plain = integrate(f, 0.0, 2.0, coarse);
  const double sharp = integrate(f, 0.0, 2.0, extrapolated);
  CHECK(std::abs(sharp - reference) < std::abs(plain - reference));
}

TEST_CASE("invalid step counts are rejected") {
  const auto f = [](double) { return 1.0; };
  CHECK_THROWS_AS(composite_simpson(f, 0.0, 1.0, 3), Error);
  CHECK_THROWS_AS(composite_simpson(f, 0.0, 1.0, 0), Error);
  const QuadratureConfig odd{5, false};
  CHECK_THROWS_AS(odd.validate(), Error);
}

TEST_CASE("non-finite integrands are reported") {
  const auto f = [](double t) { return 1.0 / t; };
  CHECK_THROWS_AS(composite_simpson(f, 0.0, 1.0, 4), NonFiniteIntegrandError);
}

TEST_CASE("sampled simpson matches the functional form") {
  const std::size_t n = 64;
  const double h = 1.0 / static_cast<double>(n);
  std::vector<double> samples(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    const double t = h * static_cast<double>(i);
    samples[i] = std::cosh(2.0 * t);
  }
  const double from_samples = simpson_sampled(samples, h);
  const double from_function = composite_simpson(
      [](double t) { return std::cosh(2.0 * t); }, 0.0, 1.0, n);
  CHECK(from_samples == doctest::Approx(from_function).epsilon(1e-15));
}

TEST_CASE("integrate_lagrangian honours its interval contract") {
  const auto one = [](double) { return 1.0; };
  // default 1e5 steps: exact up to the h = (b-a)/n representation error
  CHECK(integrate_lagrangian(one, 0.0, 3.0) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(integrate_lagrangian(one, 2.0, 2.0) == 0.0);
  CHECK_THROWS_AS(integrate_lagrangian(one, 1.0, 0.0), Error);
  const auto linear = [](double t) { return t; };
  CHECK(integrate_lagrangian(linear, 0.0, 2.0) ==
        doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("integrate_lagrangian stays within 1e-14 on cubics") {
  const auto cubic = [](double t) { return 2.0 * t * t * t - t * t + 3.0; };
  // antiderivative t^4/2 - t^3/3 + 3t on [0, 3]
  const double exact = 81.0 / 2.0 - 9.0 + 9.0;
  const double got = integrate_lagrangian(cubic, 0.0, 3.0);
  CHECK(std::abs(got - exact) / exact < 1e-14);
}

TEST_CASE("integrate_lagrangian reproduces the cosh antiderivative") {
  const double got = integrate_lagrangian(
      [](double t) { return std::cosh(2.0 * t); }, 0.0, 1.0,
      QuadratureConfig{100000, false});
  CHECK(std::abs(got - std::sinh(2.0) / 2.0) < 1e-10);
}
