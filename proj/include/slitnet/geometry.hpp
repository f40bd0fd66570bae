#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "slitnet/errors.hpp"

namespace slitnet {

/// Planar point; z runs along the optical axis, x is transverse.
struct Point2 {
  double z = 0.0;
  double x = 0.0;
};

inline double distance(const Point2& a, const Point2& b) {
  const double dz = b.z - a.z;
  const double dx = b.x - a.x;
  return std::sqrt(dz * dz + dx * dx);
}

/// One barrier: its axial position and the transverse positions of its
/// point slits.
struct Barrier {
  double z = 0.0;
  std::vector<double> slits;
};

/// Multi-barrier multi-slit apparatus. Fully determines the path set:
/// a photon travels source -> one slit per barrier -> detector.
///
/// Regions are numbered 0..B for B barriers: region 0 lies between the
/// source and the first barrier, region B between the last barrier and
/// the detector. Each region carries one refraction index.
struct SlitGeometry {
  Point2 source;
  std::vector<Barrier> barriers;
  Point2 detector;
  double wavelength = 1.0;

  std::size_t barrier_count() const { return barriers.size(); }
  std::size_t region_count() const { return barriers.size() + 1; }

  /// k = 2*pi / lambda
  double wavenumber() const { return 2.0 * std::numbers::pi / wavelength; }
};

enum class GeometryIssue {
  Ok,
  NonMonotonicBarriers,
  EmptyBarrier,
  DuplicateSlit,
  NonPositiveWavelength,
};

struct ValidationResult {
  GeometryIssue issue = GeometryIssue::Ok;
  std::string detail;

  bool ok() const { return issue == GeometryIssue::Ok; }
};

/// Checks all SlitGeometry invariants; reports the first violation found.
/// Order of checks: axial ordering, slit presence, slit distinctness,
/// wavelength positivity.
ValidationResult validate_geometry(const SlitGeometry& g);

/// Throws Error with the validation detail if the geometry is invalid.
void require_valid(const SlitGeometry& g);

inline constexpr std::uint64_t kDefaultPathCap = 10'000'000;

/// Product of per-barrier slit counts. Throws PathExplosionError when the
/// product exceeds `cap`.
std::uint64_t count_paths(const SlitGeometry& g,
                          std::uint64_t cap = kDefaultPathCap);

/// One photon path: a slit index per barrier plus the Euclidean length of
/// each of the B+1 region segments.
struct Path {
  std::vector<std::int32_t> slit_choices;
  Eigen::VectorXd segment_lengths;
};

using PathSet = std::vector<Path>;

/// Visits every path exactly once, in lexicographic order of slit indices
/// (the last barrier's index varies fastest). The Path reference passed to
/// the visitor is reused between calls.
void for_each_path(const SlitGeometry& g,
                   const std::function<void(const Path&)>& visit,
                   std::uint64_t cap = kDefaultPathCap);

/// Materializes the full path set in canonical (lexicographic) order.
PathSet enumerate_paths(const SlitGeometry& g,
                        std::uint64_t cap = kDefaultPathCap);

/// Reflects every transverse coordinate, x -> -x. Segment lengths are
/// preserved path-for-path after matching mirrored slit indices.
SlitGeometry mirrored(const SlitGeometry& g);

/// Rigid translation of all points by (dz, dx).
SlitGeometry translated(const SlitGeometry& g, double dz, double dx);

}  // namespace slitnet
