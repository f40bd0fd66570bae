#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>

#include "slitnet/errors.hpp"
#include "slitnet/summation.hpp"

namespace slitnet {

/// Composite-Simpson settings. `steps` is the number of sub-intervals
/// (even, >= 2). With `richardson` set, one extrapolation level is
/// applied: I = I(h/2) + (I(h/2) - I(h)) / 15.
struct QuadratureConfig {
  std::size_t steps = 100'000;
  bool richardson = false;

  void validate() const {
    if (steps < 2 || steps % 2 != 0) {
      throw Error("quadrature steps must be even and >= 2");
    }
  }
};

/// Composite Simpson rule over [a, b] with n sub-intervals (even, >= 2).
/// Exact on polynomials of degree <= 3. Throws NonFiniteIntegrandError
/// on a non-finite sample.
template <class F>
double composite_simpson(F&& f, double a, double b, std::size_t n) {
  if (n < 2 || n % 2 != 0) throw Error("simpson steps must be even and >= 2");
  if (a == b) return 0.0;
  const double h = (b - a) / static_cast<double>(n);

  const auto sample = [&](double t) {
    const double y = f(t);
    if (!std::isfinite(y)) {
      throw NonFiniteIntegrandError("integrand is not finite at t=" +
                                    std::to_string(t));
    }
    return y;
  };

  CompensatedSum odd, even;
  for (std::size_t i = 1; i < n; ++i) {
    const double t = a + h * static_cast<double>(i);
    if (i % 2 == 1) {
      odd.add(sample(t));
    } else {
      even.add(sample(t));
    }
  }
  return h / 3.0 *
         (sample(a) + sample(b) + 4.0 * odd.value() + 2.0 * even.value());
}

/// Simpson with the optional Richardson level from the config.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& quad) {
  quad.validate();
  if (!quad.richardson) return composite_simpson(f, a, b, quad.steps);
  const double coarse = composite_simpson(f, a, b, quad.steps);
  const double fine = composite_simpson(f, a, b, 2 * quad.steps);
  return fine + (fine - coarse) / 15.0;
}

/// Simpson over pre-sampled equidistant values y_0..y_n (n even) with
/// spacing h.
inline double simpson_sampled(std::span<const double> y, double h) {
  const std::size_t n = y.size() - 1;
  if (y.size() < 3 || n % 2 != 0) {
    throw Error("sampled simpson needs an even number of intervals");
  }
  CompensatedSum odd, even;
  for (std::size_t i = 1; i < n; ++i) {
    if (i % 2 == 1) {
      odd.add(y[i]);
    } else {
      even.add(y[i]);
    }
  }
  return h / 3.0 * (y[0] + y[n] + 4.0 * odd.value() + 2.0 * even.value());
}

}  // namespace slitnet
