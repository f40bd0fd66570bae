#pragma once

#include <complex>
#include <span>

#include <Eigen/Core>

#include "slitnet/geometry.hpp"
#include "slitnet/summation.hpp"

namespace slitnet {

/// Transition amplitude; probability of detection is |A|^2.
using Amplitude = std::complex<double>;

/// Real-valued refraction index per region (B+1 entries for B barriers).
using MediumVector = Eigen::VectorXd;

/// Dimensionless phase S/hbar contributed by one path.
struct ActionSample {
  double action_over_hbar = 0.0;
};

/// Reduction policy for phasor sums. chunk == 0 selects the canonical
/// sequential compensated sum; chunk > 0 splits the input into fixed
/// contiguous chunks that are summed independently (optionally on
/// `threads` worker threads) and combined in chunk order. Results are
/// deterministic for a fixed chunk size and agree with the canonical
/// order within 1e-12 relative.
struct SumPolicy {
  std::size_t chunk = 0;
  unsigned threads = 1;
};

/// Optical phase of one path: (2*pi/lambda) * sum_j l_j * n_j, accumulated
/// left to right as sum_j (k*l_j)*n_j. The network image stores k*l_j as
/// its weights and sums activations in the same order, so the two routes
/// agree bitwise.
double path_phase(const Path& p, const MediumVector& n, double wavelength);

/// Sum of unit phasors e^{i*phi} over the given phases, in the given
/// order, with compensated summation per component.
Amplitude amplitude_from_phases(std::span<const double> phases,
                                const SumPolicy& policy = {});

/// Same contract with phi_p = S_p/hbar taken from the samples.
Amplitude amplitude_from_actions(std::span<const ActionSample> samples,
                                 const SumPolicy& policy = {});

/// Path-sum transition amplitude of the slit apparatus: equals
/// amplitude_from_phases over enumerate_paths in canonical order.
/// Raw sum; no normalization is applied.
Amplitude qnn_amplitude(const SlitGeometry& g, const MediumVector& n,
                        const SumPolicy& policy = {},
                        std::uint64_t cap = kDefaultPathCap);

inline double probability(const Amplitude& a) {
  return a.real() * a.real() + a.imag() * a.imag();
}

}  // namespace slitnet
