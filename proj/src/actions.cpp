#include "slitnet/actions.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace slitnet {

namespace {
constexpr double kTinyDenominator = 1e-30;
}

double action_rel_error(double closed_form, double numeric) {
  return std::abs(closed_form - numeric) /
         std::max(std::abs(closed_form), kTinyDenominator);
}

double effective_index(double potential, double mass, double /*wavenumber*/,
                       const PhysConstants& consts) {
  consts.validate();
  if (!(mass > 0.0)) throw Error("mass must be positive");
  const double pi = std::numbers::pi;
  const double n_sq =
      1.0 - 2.0 * mass / (pi * pi * consts.hbar * consts.hbar) * potential;
  if (n_sq <= 0.0) {
    throw EvanescentRegionError("effective index squared is " +
                                std::to_string(n_sq));
  }
  return std::sqrt(n_sq);
}

double schwarzschild_index(double r, double central_mass,
                           const PhysConstants& consts) {
  consts.validate();
  if (!(central_mass > 0.0)) throw Error("central mass must be positive");
  const double critical =
      central_mass * consts.G / (2.0 * consts.c * consts.c);
  if (!(r > critical)) {
    throw InsideCriticalRadiusError("r = " + std::to_string(r) +
                                    " is at or inside the critical radius " +
                                    std::to_string(critical));
  }
  const double mu = critical / r;
  const double one_plus = 1.0 + mu;
  return one_plus * one_plus * one_plus / (1.0 - mu);
}

ActionResult rock_action(double m, double central_mass, double r_inner,
                         double r_outer, const PhysConstants& consts,
                         const QuadratureConfig& quad) {
  consts.validate();
  if (!(r_inner > 0.0) || !(r_outer >= r_inner)) {
    throw BadRadiiError("need r_outer >= r_inner > 0");
  }
  const double gm = consts.G * central_mass;

  ActionResult res;
  res.input_factor = m * std::sqrt(8.0 * gm);
  res.weight_factor = std::sqrt(r_outer) - std::sqrt(r_inner);
  res.closed_form = res.input_factor * res.weight_factor;

  const auto integrand = [&](double r) {
    const double v = std::sqrt(2.0 * gm / r);
    const double lagrangian = 0.5 * m * v * v + gm * m / r;
    return lagrangian / v;
  };
  res.numeric = integrate(integrand, r_inner, r_outer, quad);
  res.rel_error = action_rel_error(res.closed_form, res.numeric);
  return res;
}

double desitter_scale_factor(double t, double lambda_cosmological) {
  if (!(lambda_cosmological > 0.0)) {
    throw Error("cosmological constant must be positive");
  }
  if (t < 0.0) throw Error("time must be nonnegative");
  const double lam = std::sqrt(lambda_cosmological);
  return (std::exp(lam * t) + std::exp(-lam * t)) / (2.0 * lam);
}

ActionResult desitter_action(double lambda_cosmological, double t_now,
                             const QuadratureConfig& quad) {
  if (!(lambda_cosmological > 0.0)) {
    throw Error("cosmological constant must be positive");
  }
  if (!(t_now > 0.0)) throw Error("t_now must be positive");
  const double lam = std::sqrt(lambda_cosmological);

  const auto lagrangian = [&](double t) {
    const double a = desitter_scale_factor(t, lambda_cosmological);
    return -1.0 + 2.0 * lambda_cosmological * a * a;
  };

  ActionResult res;
  const double a_now = desitter_scale_factor(t_now, lambda_cosmological);
  res.input_factor = lam * std::tanh(lam * t_now);  // H(t_now)
  res.weight_factor = a_now * a_now;
  res.closed_form = res.input_factor * res.weight_factor;
  res.numeric = integrate(lagrangian, 0.0, t_now, quad);
  res.rel_error = action_rel_error(res.closed_form, res.numeric);
  return res;
}

double desitter_action_tanh_form(double lambda_cosmological, double t_now) {
  const double lam = std::sqrt(lambda_cosmological);
  const double a_now = desitter_scale_factor(t_now, lambda_cosmological);
  return std::tanh(lam * t_now) * a_now * a_now;
}

double inflation_hubble(double potential, const PhysConstants& consts) {
  consts.validate();
  if (!(potential > 0.0)) throw Error("potential must be positive");
  return std::sqrt(8.0 * std::numbers::pi * consts.G * potential / 3.0);
}

ActionResult inflation_action(double potential, double t_horizon,
                              const PhysConstants& consts,
                              const QuadratureConfig& quad) {
  if (!(t_horizon > 0.0)) throw Error("t_horizon must be positive");
  const double hubble = inflation_hubble(potential, consts);

  ActionResult res;
  res.input_factor =
      -(1.0 / 3.0) *
      std::sqrt(3.0 * potential / (8.0 * std::numbers::pi * consts.G));
  res.weight_factor = std::exp(3.0 * hubble * t_horizon);
  res.closed_form = -(potential / (3.0 * hubble)) * res.weight_factor;

  const auto lagrangian = [&](double t) {
    return -potential * std::exp(3.0 * hubble * t);
  };
  res.numeric = integrate(lagrangian, 0.0, t_horizon, quad);
  res.rel_error = action_rel_error(res.closed_form, res.numeric);
  return res;
}

double inflation_exact_action(double potential, double t_horizon,
                              const PhysConstants& consts) {
  const double hubble = inflation_hubble(potential, consts);
  return -(potential / (3.0 * hubble)) *
         (std::exp(3.0 * hubble * t_horizon) - 1.0);
}

namespace {

struct RadialProblem {
  double schwarzschild_radius = 0.0;
  double ratio_sq = 0.0;  // (m c^2 / E)^2
  double c = 1.0;
  double direction = 1.0;

  double metric_factor(double r) const {
    if (!(r > schwarzschild_radius)) {
      throw BelowHorizonError("trajectory reached r = " + std::to_string(r) +
                              " at or below the horizon " +
                              std::to_string(schwarzschild_radius));
    }
    return 1.0 - schwarzschild_radius / r;
  }

  double radial_speed(double r) const {
    const double f = metric_factor(r);
    const double radicand = 1.0 - f * ratio_sq;
    if (radicand < 0.0) {
      throw TurningPointCrossedError(
          "velocity radicand went negative at r = " + std::to_string(r));
    }
    return direction * c * f * std::sqrt(radicand);
  }
};

// fixed-step RK4 on dr/dt; returns f(r(t)) at the n+1 grid nodes
std::vector<double> solve_metric_factor_samples(const RadialProblem& prob,
                                                double r_start, double t_span,
                                                std::size_t n) {
  std::vector<double> samples;
  samples.reserve(n + 1);
  const double h = t_span / static_cast<double>(n);
  double r = r_start;
  samples.push_back(prob.metric_factor(r));
  for (std::size_t i = 0; i < n; ++i) {
    const double k1 = prob.radial_speed(r);
    const double k2 = prob.radial_speed(r + 0.5 * h * k1);
    const double k3 = prob.radial_speed(r + 0.5 * h * k2);
    const double k4 = prob.radial_speed(r + h * k3);
    r += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    samples.push_back(prob.metric_factor(r));
  }
  return samples;
}

}  // namespace

ActionResult schwarzschild_radial_action(double m, double central_mass,
                                         double energy, double r_start,
                                         double t_span, int direction,
                                         const PhysConstants& consts,
                                         std::size_t ode_steps) {
  consts.validate();
  if (direction != 1 && direction != -1) {
    throw Error("direction must be +1 or -1");
  }
  if (!(m > 0.0) || !(central_mass > 0.0) || !(energy > 0.0)) {
    throw Error("m, M and E must be positive");
  }
  if (t_span < 0.0) throw Error("t_span must be nonnegative");
  if (ode_steps < 2 || ode_steps % 2 != 0) {
    throw Error("ode_steps must be even and >= 2");
  }

  const double c_sq = consts.c * consts.c;
  const double rest_energy = m * c_sq;
  RadialProblem prob;
  prob.schwarzschild_radius = 2.0 * consts.G * central_mass / c_sq;
  prob.ratio_sq = (rest_energy / energy) * (rest_energy / energy);
  prob.c = consts.c;
  prob.direction = static_cast<double>(direction);

  if (!(r_start > prob.schwarzschild_radius)) {
    throw BelowHorizonError("r_start must lie outside the horizon " +
                            std::to_string(prob.schwarzschild_radius));
  }

  ActionResult res;
  res.input_factor = -rest_energy * prob.ratio_sq;
  if (t_span == 0.0) {
    return res;
  }

  const auto action_at = [&](std::size_t n) {
    const std::vector<double> f = solve_metric_factor_samples(
        prob, r_start, t_span, n);
    return simpson_sampled(f, t_span / static_cast<double>(n));
  };

  res.weight_factor = action_at(ode_steps);
  res.numeric = res.input_factor * res.weight_factor;
  res.closed_form = res.numeric;

  const double refined = res.input_factor * action_at(2 * ode_steps);
  res.rel_error = std::abs(refined - res.numeric) /
                  std::max(std::abs(refined), kTinyDenominator);
  return res;
}

double integrate_lagrangian(const std::function<double(double)>& lagrangian,
                            double t0, double t1,
                            const QuadratureConfig& quad) {
  if (!(t1 >= t0)) throw Error("need t1 >= t0");
  return integrate(lagrangian, t0, t1, quad);
}

ActionSample action_to_phase(const ActionResult& result,
                             const PhysConstants& consts) {
  consts.validate();
  if (!std::isfinite(result.numeric)) {
    throw Error("action is not finite");
  }
  return ActionSample{result.numeric / consts.hbar};
}

}  // namespace slitnet
