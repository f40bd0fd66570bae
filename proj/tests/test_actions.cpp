#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "slitnet/actions.hpp"

using namespace slitnet;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("effective index of free space is 1") {
  CHECK(effective_index(0.0, 1.0, 1.0) == 1.0);
}

TEST_CASE("effective index at half the critical potential") {
  // critical potential solves 1 - 2mV/(pi^2 hbar^2) = 0
  const double v_crit = kPi * kPi / 2.0;
  const double n = effective_index(v_crit / 2.0, 1.0, 1.0);
  CHECK(n == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("evanescent region at and beyond the critical potential") {
  const double v_crit = kPi * kPi / 2.0;
  CHECK_THROWS_AS(effective_index(v_crit * (1.0 + 1e-12), 1.0, 1.0),
                  EvanescentRegionError);
  CHECK_THROWS_AS(effective_index(2.0 * v_crit, 1.0, 1.0),
                  EvanescentRegionError);
  CHECK_NOTHROW(effective_index(v_crit * (1.0 - 1e-9), 1.0, 1.0));
}

TEST_CASE("central-mass index is asymptotically flat") {
  const double n = schwarzschild_index(1e9, 1.0);
  CHECK(std::abs(n - 1.0) < 1e-8);
}

TEST_CASE("central-mass index at r = MG") {
  // (1 + 1/2)^3 / (1 - 1/2) = 6.75
  CHECK(schwarzschild_index(1.0, 1.0) == doctest::Approx(6.75).epsilon(1e-15));
}

TEST_CASE("central-mass index decreases with radius") {
  double prev = schwarzschild_index(0.51, 1.0);
  for (double r = 0.6; r <= 100.0; r += 0.5) {
    const double n = schwarzschild_index(r, 1.0);
    CHECK(n < prev);
    prev = n;
  }
}

TEST_CASE("the critical radius is enforced") {
  CHECK_THROWS_AS(schwarzschild_index(0.5, 1.0), InsideCriticalRadiusError);
  CHECK_THROWS_AS(schwarzschild_index(0.4, 1.0), InsideCriticalRadiusError);
}

TEST_CASE("dimensional constants rescale the critical radius") {
  PhysConstants si;
  si.c = 2.0;  // critical radius shrinks to MG / (2 c^2) = 1/8
  CHECK_THROWS_AS(schwarzschild_index(0.12, 1.0, si),
                  InsideCriticalRadiusError);
  CHECK_NOTHROW(schwarzschild_index(0.13, 1.0, si));
  // same reduced radius MG/(2 c^2 r), same index value
  CHECK(schwarzschild_index(0.25, 1.0, si) ==
        doctest::Approx(schwarzschild_index(1.0, 1.0)).epsilon(1e-15));
}

TEST_CASE("effective index responds to hbar") {
  // critical potential scales as hbar^2
  PhysConstants scaled;
  scaled.hbar = 2.0;
  const double v_crit = kPi * kPi / 2.0;
  CHECK_THROWS_AS(effective_index(1.5 * v_crit, 1.0, 1.0),
                  EvanescentRegionError);
  CHECK(effective_index(2.0 * v_crit, 1.0, 1.0, scaled) ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("escape action vanishes on the empty interval") {
  const ActionResult r = rock_action(1.0, 1.0, 2.0, 2.0);
  CHECK(r.closed_form == 0.0);
  CHECK(r.numeric == 0.0);
}

TEST_CASE("escape action reference value") {
  // sqrt(8) * (sqrt(4) - sqrt(1)) = 2 sqrt(2)
  const ActionResult r = rock_action(1.0, 1.0, 1.0, 4.0);
  CHECK(r.closed_form == doctest::Approx(2.8284271247461903).epsilon(1e-15));
  CHECK(r.rel_error < 1e-8);
  CHECK(r.numeric == doctest::Approx(2.8284271247461903).epsilon(1e-8));
  CHECK(r.input_factor * r.weight_factor ==
        doctest::Approx(r.closed_form).epsilon(1e-15));
}

TEST_CASE("escape action is linear in the particle mass") {
  const ActionResult once = rock_action(1.3, 2.0, 1.0, 9.0);
  const ActionResult twice = rock_action(2.6, 2.0, 1.0, 9.0);
  CHECK(twice.closed_form == 2.0 * once.closed_form);
  CHECK(twice.numeric == 2.0 * once.numeric);
}

TEST_CASE("escape action rejects bad radii") {
  CHECK_THROWS_AS(rock_action(1.0, 1.0, 4.0, 1.0), BadRadiiError);
  CHECK_THROWS_AS(rock_action(1.0, 1.0, 0.0, 1.0), BadRadiiError);
}

TEST_CASE("escape action closed form survives 100 random draws") {
  std::mt19937_64 rng(314);
  std::uniform_real_distribution<double> mass(0.5, 5.0);
  std::uniform_real_distribution<double> inner(0.5, 5.0);
  std::uniform_real_distribution<double> ratio(1.01, 100.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double r_inner = inner(rng);
    const ActionResult r = rock_action(mass(rng), mass(rng), r_inner,
                                       r_inner * ratio(rng));
    CHECK(r.rel_error < 1e-8);
  }
}

TEST_CASE("vacuum-energy scale factor") {
  CHECK(desitter_scale_factor(0.0, 1.0) == 1.0);
  CHECK(desitter_scale_factor(0.0, 4.0) == 0.5);
  CHECK_THROWS_AS(desitter_scale_factor(1.0, 0.0), Error);
  CHECK_THROWS_AS(desitter_scale_factor(-1.0, 1.0), Error);
}

TEST_CASE("scale factor satisfies its energy constraint") {
  // finite-difference adot, residual of adot^2 - L a^2 = -1
  const double h = 1e-6;
  for (const double lambda : {0.5, 1.0, 3.0}) {
    for (const double t : {0.3, 1.1, 2.4}) {
      const double a = desitter_scale_factor(t, lambda);
      const double adot = (desitter_scale_factor(t + h, lambda) -
                           desitter_scale_factor(t - h, lambda)) /
                          (2.0 * h);
      const double residual = adot * adot - lambda * a * a;
      CHECK(residual == doctest::Approx(-1.0).epsilon(1e-6));
    }
  }
}

TEST_CASE("vacuum-energy action vanishes with the interval") {
  const ActionResult r = desitter_action(1.0, 1e-6);
  CHECK(std::abs(r.numeric) < 1.1e-6);
  CHECK(r.numeric > 0.0);
}

TEST_CASE("vacuum-energy action reference value") {
  // integral of cosh(2t) over [0,1] = sinh(2)/2
  const double exact = std::sinh(2.0) / 2.0;
  const ActionResult r = desitter_action(1.0, 1.0);
  CHECK(r.numeric == doctest::Approx(exact).epsilon(1e-10));
  CHECK(r.closed_form == doctest::Approx(exact).epsilon(1e-12));
  CHECK(r.rel_error < 1e-8);
  CHECK(r.input_factor * r.weight_factor ==
        doctest::Approx(r.closed_form).epsilon(1e-15));
}

TEST_CASE("vacuum-energy closed form tracks the quadrature off Lambda = 1") {
  for (const double lambda : {0.25, 4.0, 9.0}) {
    for (const double t : {0.5, 1.0, 2.0}) {
      const ActionResult r = desitter_action(lambda, t);
      CHECK(r.rel_error < 1e-8);
      // closed form equals sinh(2 sqrt(L) t) / (2 sqrt(L)) identically
      const double lam = std::sqrt(lambda);
      CHECK(r.closed_form ==
            doctest::Approx(std::sinh(2.0 * lam * t) / (2.0 * lam))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("the two printed closed forms differ by sqrt(Lambda)") {
  const double lambda = 4.0;
  const double t = 0.5;
  const ActionResult r = desitter_action(lambda, t);
  const double tanh_form = desitter_action_tanh_form(lambda, t);
  CHECK(r.closed_form / tanh_form ==
        doctest::Approx(std::sqrt(lambda)).epsilon(1e-12));
  // they agree only at Lambda = 1
  const ActionResult unit = desitter_action(1.0, t);
  CHECK(unit.closed_form ==
        doctest::Approx(desitter_action_tanh_form(1.0, t)).epsilon(1e-15));
}

TEST_CASE("inflation quadrature matches the exact antiderivative") {
  for (const double v : {0.05, 0.3, 1.7}) {
    for (const double t : {0.4, 1.0, 2.5}) {
      const ActionResult r = inflation_action(v, t);
      const double exact = inflation_exact_action(v, t);
      CHECK(std::abs(r.numeric - exact) / std::abs(exact) < 1e-10);
      CHECK(r.input_factor * r.weight_factor ==
            doctest::Approx(r.closed_form).epsilon(1e-12));
    }
  }
}

TEST_CASE("inflation leading-term gap decays as exp(-3HT)") {
  const double v = 3.0 / (8.0 * kPi);  // H = 1
  const double hubble = inflation_hubble(v);
  CHECK(hubble == doctest::Approx(1.0).epsilon(1e-15));
  for (const double ht : {1.0, 2.0, 5.0}) {
    const double t = ht / hubble;
    const ActionResult r = inflation_action(v, t);
    const double gap = std::abs(r.closed_form - r.numeric) /
                       std::abs(r.numeric);
    const double expected = std::exp(-3.0 * ht) / (1.0 - std::exp(-3.0 * ht));
    CHECK(gap == doctest::Approx(expected).epsilon(0.01));
  }
  // at HT = 5 the gap sits near 3.06e-7
  const ActionResult r5 = inflation_action(v, 5.0 / hubble);
  const double gap5 =
      std::abs(r5.closed_form - r5.numeric) / std::abs(r5.numeric);
  CHECK(gap5 == doctest::Approx(3.06e-7).epsilon(0.01));
}

TEST_CASE("quadrupling the potential doubles the expansion rate") {
  const double v = 0.7;
  CHECK(inflation_hubble(4.0 * v) == 2.0 * inflation_hubble(v));
}

TEST_CASE("relativistic radial action in the far field") {
  // f -> 1 far from the horizon, so the weight factor approaches t_span
  const ActionResult r = schwarzschild_radial_action(
      1.0, 1.0, 1.5, 2e6, 1.0, +1, PhysConstants{}, 512);
  CHECK(std::abs(r.weight_factor - 1.0) < 1e-5);
}

TEST_CASE("radial action input validation") {
  CHECK_THROWS_AS(
      schwarzschild_radial_action(1.0, 1.0, 1.05, 20.0, 5.0, 0),
      Error);
  CHECK_THROWS_AS(
      schwarzschild_radial_action(1.0, 1.0, 1.05, 1.5, 5.0, +1),
      BelowHorizonError);
}

TEST_CASE("turning point is flagged when E cannot reach r_start") {
  // E = 0.95 mc^2 allows radii up to R_S / (1 - (E/mc^2)^2) ~ 20.5 only
  CHECK_THROWS_AS(
      schwarzschild_radial_action(1.0, 1.0, 0.95, 30.0, 5.0, +1),
      TurningPointCrossedError);
}

TEST_CASE("radial action reference case converges under step halving") {
  const ActionResult r = schwarzschild_radial_action(
      1.0, 1.0, 1.05, 20.0, 5.0, +1, PhysConstants{}, 4096);
  CHECK(r.rel_error < 1e-8);
  CHECK(r.input_factor * r.weight_factor == r.numeric);
  CHECK(r.closed_form == r.numeric);
  CHECK(r.numeric < 0.0);
}

TEST_CASE("radial action exhibits fourth-order convergence") {
  const auto action_with = [](std::size_t steps) {
    return schwarzschild_radial_action(1.0, 1.0, 1.05, 20.0, 5.0, +1,
                                       PhysConstants{}, steps)
        .numeric;
  };
  const double s1 = action_with(64);
  const double s2 = action_with(128);
  const double s3 = action_with(256);
  const double ratio = std::abs(s1 - s2) / std::abs(s2 - s3);
  // a 4th-order scheme gains a factor ~16 per halving
  CHECK(ratio > 10.0);
  CHECK(ratio < 30.0);
}

TEST_CASE("falling trajectories integrate too") {
  const ActionResult r = schwarzschild_radial_action(
      1.0, 1.0, 1.2, 20.0, 3.0, -1, PhysConstants{}, 2048);
  CHECK(r.rel_error < 1e-8);
  CHECK(r.weight_factor > 0.0);
}

TEST_CASE("action phases divide by hbar") {
  ActionResult zero;
  CHECK(action_to_phase(zero).action_over_hbar == 0.0);

  ActionResult pi_action;
  pi_action.numeric = kPi;
  CHECK(action_to_phase(pi_action).action_over_hbar == kPi);

  PhysConstants scaled;
  scaled.hbar = 2.0;
  CHECK(action_to_phase(pi_action, scaled).action_over_hbar == kPi / 2.0);

  // sweep: phases reproduce an independent recomputation
  for (const double outer : {4.0, 9.0, 16.0}) {
    const ActionResult r = rock_action(1.0, 1.0, 1.0, outer);
    CHECK(action_to_phase(r).action_over_hbar == r.numeric);
  }
}
