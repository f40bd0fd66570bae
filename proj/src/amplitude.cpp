#include "slitnet/amplitude.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace slitnet {

namespace {

Amplitude sum_phasors_sequential(std::span<const double> phases) {
  CompensatedSum re, im;
  for (const double phi : phases) {
    re.add(std::cos(phi));
    im.add(std::sin(phi));
  }
  return {re.value(), im.value()};
}

Amplitude sum_phasors_chunked(std::span<const double> phases,
                              const SumPolicy& policy) {
  const std::size_t n = phases.size();
  const std::size_t chunk = policy.chunk;
  const std::size_t num_chunks = (n + chunk - 1) / chunk;
  std::vector<Amplitude> partial(num_chunks);

  const auto sum_range = [&](std::size_t first, std::size_t last) {
    for (std::size_t c = first; c < last; ++c) {
      const std::size_t begin = c * chunk;
      const std::size_t end = std::min(begin + chunk, n);
      partial[c] = sum_phasors_sequential(phases.subspan(begin, end - begin));
    }
  };

  const unsigned workers =
      std::min<unsigned>(std::max(1u, policy.threads),
                         static_cast<unsigned>(num_chunks));
  if (workers <= 1) {
    sum_range(0, num_chunks);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t per = (num_chunks + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t first = w * per;
      const std::size_t last = std::min(first + per, num_chunks);
      if (first >= last) break;
      pool.emplace_back(sum_range, first, last);
    }
    for (auto& t : pool) t.join();
  }

  // combine in chunk order; association differs from the canonical sum
  // by at most the documented 1e-12 relative tolerance
  CompensatedSum re, im;
  for (const Amplitude& a : partial) {
    re.add(a.real());
    im.add(a.imag());
  }
  return {re.value(), im.value()};
}

}  // namespace

double path_phase(const Path& p, const MediumVector& n, double wavelength) {
  if (n.size() != p.segment_lengths.size()) {
    throw DimensionMismatchError(
        "medium vector has " + std::to_string(n.size()) +
        " entries, path has " + std::to_string(p.segment_lengths.size()) +
        " segments");
  }
  if (!(wavelength > 0.0)) throw Error("wavelength must be positive");
  const double k = 2.0 * std::numbers::pi / wavelength;
  double acc = 0.0;
  for (Eigen::Index j = 0; j < n.size(); ++j) {
    acc += (k * p.segment_lengths[j]) * n[j];
  }
  return acc;
}

Amplitude amplitude_from_phases(std::span<const double> phases,
                                const SumPolicy& policy) {
  if (phases.empty()) throw EmptyPathSetError("no phases to sum");
  if (policy.chunk == 0 || phases.size() <= policy.chunk) {
    return sum_phasors_sequential(phases);
  }
  return sum_phasors_chunked(phases, policy);
}

Amplitude amplitude_from_actions(std::span<const ActionSample> samples,
                                 const SumPolicy& policy) {
  if (samples.empty()) throw EmptyPathSetError("no action samples to sum");
  std::vector<double> phases;
  phases.reserve(samples.size());
  for (const ActionSample& s : samples) phases.push_back(s.action_over_hbar);
  return amplitude_from_phases(phases, policy);
}

Amplitude qnn_amplitude(const SlitGeometry& g, const MediumVector& n,
                        const SumPolicy& policy, std::uint64_t cap) {
  if (n.size() != static_cast<Eigen::Index>(g.region_count())) {
    throw DimensionMismatchError(
        "medium vector has " + std::to_string(n.size()) + " entries, geometry has " +
        std::to_string(g.region_count()) + " regions");
  }
  for (Eigen::Index j = 0; j < n.size(); ++j) {
    if (!(n[j] > 0.0)) {
      throw Error("refraction index " + std::to_string(j) +
                  " must be positive");
    }
  }
  const double k = g.wavenumber();

  if (policy.chunk == 0) {
    // canonical order: stream the paths, compensated accumulation
    CompensatedSum re, im;
    for_each_path(
        g,
        [&](const Path& p) {
          double phi = 0.0;
          for (Eigen::Index j = 0; j < n.size(); ++j) {
            phi += (k * p.segment_lengths[j]) * n[j];
          }
          re.add(std::cos(phi));
          im.add(std::sin(phi));
        },
        cap);
    return {re.value(), im.value()};
  }

  std::vector<double> phases;
  phases.reserve(static_cast<std::size_t>(count_paths(g, cap)));
  for_each_path(
      g,
      [&](const Path& p) {
        double phi = 0.0;
        for (Eigen::Index j = 0; j < n.size(); ++j) {
          phi += (k * p.segment_lengths[j]) * n[j];
        }
        phases.push_back(phi);
      },
      cap);
  return amplitude_from_phases(phases, policy);
}

}  // namespace slitnet
