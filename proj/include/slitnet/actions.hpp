#pragma once

#include <cstddef>
#include <functional>

#include "slitnet/amplitude.hpp"
#include "slitnet/errors.hpp"
#include "slitnet/quadrature.hpp"

namespace slitnet {

/// Geometric units by default: G = c = hbar = 1.
struct PhysConstants {
  double G = 1.0;
  double c = 1.0;
  double hbar = 1.0;

  void validate() const {
    if (!(G > 0.0) || !(c > 0.0) || !(hbar > 0.0)) {
      throw Error("physical constants must be positive");
    }
  }
};

/// Closed-form action paired with its numerical cross-check and the
/// input-factor x weight-factor neuron decomposition.
struct ActionResult {
  double closed_form = 0.0;
  double numeric = 0.0;
  double input_factor = 0.0;
  double weight_factor = 0.0;
  double rel_error = 0.0;
};

/// |closed - numeric| / max(|closed|, tiny).
double action_rel_error(double closed_form, double numeric);

/// Effective refraction index of a 1-D potential, as printed:
/// n^2 = 1 - 2m V / (pi^2 hbar^2). The printed constant differs from the
/// standard optic-mechanical analogy, whose denominator carries k^2 hbar^2;
/// the wavenumber is accepted so callers can switch conventions, but only
/// the printed form is evaluated. Throws EvanescentRegionError for
/// n^2 <= 0.
double effective_index(double potential, double mass, double wavenumber,
                       const PhysConstants& consts = {});

/// Isotropic-form refraction index of a central mass:
/// n(r) = (1 + MG/(2 c^2 r))^3 / (1 - MG/(2 c^2 r)), valid for
/// r > MG/(2 c^2).
double schwarzschild_index(double r, double central_mass,
                           const PhysConstants& consts = {});

/// Action of a particle leaving a gravitating body at escape speed,
/// from radius r_inner to r_outer:
///   closed form  m * sqrt(8 G M) * (sqrt(r_outer) - sqrt(r_inner))
///   numeric      quadrature of L = m v^2/2 + G M m / r along the
///                trajectory, dt = dr / v(r), v(r) = sqrt(2 G M / r)
/// Decomposition: input m*sqrt(8GM), weight sqrt(r_outer)-sqrt(r_inner).
ActionResult rock_action(double m, double central_mass, double r_inner,
                         double r_outer, const PhysConstants& consts = {},
                         const QuadratureConfig& quad = {});

/// Scale factor of the positively curved vacuum-energy universe:
/// a(t) = (e^{sqrt(L) t} + e^{-sqrt(L) t}) / (2 sqrt(L)).
double desitter_scale_factor(double t, double lambda_cosmological);

/// Action of that universe from t = 0 to t_now.
///   numeric      quadrature of L(t) = -1 + 2 L a^2(t)
///   closed form  H(t_now) a^2(t_now), H = sqrt(L) tanh(sqrt(L) t)
/// Decomposition: input H(t_now), weight a^2(t_now).
ActionResult desitter_action(double lambda_cosmological, double t_now,
                             const QuadratureConfig& quad = {});

/// Second printed variant of the same closed form,
/// tanh(sqrt(L) t_now) a^2(t_now); differs from H a^2 by a factor
/// sqrt(L) whenever L != 1. Reported alongside, never silently adopted.
double desitter_action_tanh_form(double lambda_cosmological, double t_now);

/// Slow-roll inflation action from t = 0 to t_horizon with constant
/// potential V: L(t) = -V e^{3 H t}, H = sqrt(8 pi G V / 3).
///   numeric      quadrature of L
///   closed form  -(V / 3H) e^{3 H t_horizon}   (leading-term form)
/// Decomposition: input -(1/3) sqrt(3 V / (8 pi G)), weight e^{3 H T}.
/// rel_error is the leading-term form against the quadrature.
ActionResult inflation_action(double potential, double t_horizon,
                              const PhysConstants& consts = {},
                              const QuadratureConfig& quad = {});

/// Exact antiderivative -(V / 3H) (e^{3 H t_horizon} - 1) for the same
/// Lagrangian; the quadrature must match this to full precision.
double inflation_exact_action(double potential, double t_horizon,
                              const PhysConstants& consts = {});

double inflation_hubble(double potential, const PhysConstants& consts = {});

/// Radial motion outside a black hole at conserved energy E. Integrates
///   dr/dt = direction * c * f(r) * sqrt(1 - f(r) (m c^2 / E)^2),
///   f(r) = 1 - R_S / r,  R_S = 2 G M / c^2
/// with fixed-step RK4 over [0, t_span], then evaluates
///   S = -m c^2 (m c^2 / E)^2 * integral of f(r(t)) dt
/// by Simpson on the solved trajectory.
/// input_factor = -m c^2 (m c^2/E)^2, weight_factor = integral of f dt;
/// closed_form = input * weight = numeric by construction. rel_error
/// measures self-consistency under halving the ODE step.
ActionResult schwarzschild_radial_action(double m, double central_mass,
                                         double energy, double r_start,
                                         double t_span, int direction,
                                         const PhysConstants& consts = {},
                                         std::size_t ode_steps = 4096);

/// Composite-Simpson time integral of a Lagrangian on [t0, t1].
double integrate_lagrangian(const std::function<double(double)>& lagrangian,
                            double t0, double t1,
                            const QuadratureConfig& quad = {});

/// Phase contributed by an action: S / hbar, from the numeric value.
ActionSample action_to_phase(const ActionResult& result,
                             const PhysConstants& consts = {});

}  // namespace slitnet
