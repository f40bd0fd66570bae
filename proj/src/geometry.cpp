#include "slitnet/geometry.hpp"

#include <limits>
#include <sstream>

namespace slitnet {

ValidationResult validate_geometry(const SlitGeometry& g) {
  const auto fail = [](GeometryIssue issue, std::string detail) {
    return ValidationResult{issue, std::move(detail)};
  };

  double prev_z = g.source.z;
  for (std::size_t i = 0; i < g.barriers.size(); ++i) {
    if (!(g.barriers[i].z > prev_z)) {
      std::ostringstream msg;
      msg << "barrier " << i << " at z=" << g.barriers[i].z
          << " does not lie strictly after z=" << prev_z;
      return fail(GeometryIssue::NonMonotonicBarriers, msg.str());
    }
    prev_z = g.barriers[i].z;
  }
  if (!(g.detector.z > prev_z)) {
    return fail(GeometryIssue::NonMonotonicBarriers,
                "detector does not lie strictly after the last barrier");
  }

  for (std::size_t i = 0; i < g.barriers.size(); ++i) {
    if (g.barriers[i].slits.empty()) {
      return fail(GeometryIssue::EmptyBarrier,
                  "barrier " + std::to_string(i) + " has no slits");
    }
  }

  for (std::size_t i = 0; i < g.barriers.size(); ++i) {
    const auto& slits = g.barriers[i].slits;
    for (std::size_t a = 0; a < slits.size(); ++a) {
      for (std::size_t b = a + 1; b < slits.size(); ++b) {
        if (slits[a] == slits[b]) {
          std::ostringstream msg;
          msg << "barrier " << i << " repeats slit position x=" << slits[a];
          return fail(GeometryIssue::DuplicateSlit, msg.str());
        }
      }
    }
  }

  if (!(g.wavelength > 0.0) || !std::isfinite(g.wavelength)) {
    return fail(GeometryIssue::NonPositiveWavelength,
                "wavelength must be positive and finite");
  }

  return {};
}

void require_valid(const SlitGeometry& g) {
  const ValidationResult r = validate_geometry(g);
  if (!r.ok()) throw Error("invalid geometry: " + r.detail);
}

std::uint64_t count_paths(const SlitGeometry& g, std::uint64_t cap) {
  require_valid(g);
  std::uint64_t product = 1;
  for (const Barrier& b : g.barriers) {
    const std::uint64_t s = b.slits.size();
    if (product > cap / s) {
      std::ostringstream msg;
      msg << "path count exceeds cap " << cap;
      throw PathExplosionError(msg.str());
    }
    product *= s;
  }
  if (product > cap) {
    throw PathExplosionError("path count " + std::to_string(product) +
                             " exceeds cap " + std::to_string(cap));
  }
  return product;
}

void for_each_path(const SlitGeometry& g,
                   const std::function<void(const Path&)>& visit,
                   std::uint64_t cap) {
  count_paths(g, cap);  // validates and enforces the cap

  const std::size_t num_barriers = g.barriers.size();
  Path path;
  path.slit_choices.assign(num_barriers, 0);
  path.segment_lengths.resize(static_cast<Eigen::Index>(num_barriers) + 1);

  for (;;) {
    Point2 prev = g.source;
    for (std::size_t b = 0; b < num_barriers; ++b) {
      const Point2 cur{g.barriers[b].z,
                       g.barriers[b].slits[static_cast<std::size_t>(
                           path.slit_choices[b])]};
      path.segment_lengths[static_cast<Eigen::Index>(b)] = distance(prev, cur);
      prev = cur;
    }
    path.segment_lengths[static_cast<Eigen::Index>(num_barriers)] =
        distance(prev, g.detector);
    visit(path);

    // lexicographic odometer, last barrier fastest
    std::size_t b = num_barriers;
    while (b > 0) {
      --b;
      auto& idx = path.slit_choices[b];
      if (static_cast<std::size_t>(++idx) < g.barriers[b].slits.size()) break;
      idx = 0;
      if (b == 0) return;
    }
    if (num_barriers == 0) return;
  }
}

PathSet enumerate_paths(const SlitGeometry& g, std::uint64_t cap) {
  PathSet paths;
  paths.reserve(static_cast<std::size_t>(count_paths(g, cap)));
  for_each_path(g, [&paths](const Path& p) { paths.push_back(p); }, cap);
  return paths;
}

SlitGeometry mirrored(const SlitGeometry& g) {
  SlitGeometry m = g;
  m.source.x = -m.source.x;
  m.detector.x = -m.detector.x;
  for (Barrier& b : m.barriers) {
    for (double& x : b.slits) x = -x;
  }
  return m;
}

SlitGeometry translated(const SlitGeometry& g, double dz, double dx) {
  SlitGeometry t = g;
  t.source.z += dz;
  t.source.x += dx;
  t.detector.z += dz;
  t.detector.x += dx;
  for (Barrier& b : t.barriers) {
    b.z += dz;
    for (double& x : b.slits) x += dx;
  }
  return t;
}

}  // namespace slitnet
