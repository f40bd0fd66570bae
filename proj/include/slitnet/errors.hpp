#pragma once

#include <stdexcept>
#include <string>

namespace slitnet {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The slit-count product exceeds the configured path cap.
struct PathExplosionError : Error {
  using Error::Error;
};

/// A vector or matrix dimension does not match its counterpart.
struct DimensionMismatchError : Error {
  using Error::Error;
};

/// A phasor sum was requested over zero paths.
struct EmptyPathSetError : Error {
  using Error::Error;
};

/// The operation requires a different activation function.
struct WrongActivationError : Error {
  using Error::Error;
};

struct EmptyDatasetError : Error {
  using Error::Error;
};

/// Two consecutive path points (nearly) coincide; the length derivative
/// is undefined there.
struct DegenerateSegmentError : Error {
  using Error::Error;
};

struct BadRangeError : Error {
  using Error::Error;
};

/// The effective squared refraction index is not positive.
struct EvanescentRegionError : Error {
  using Error::Error;
};

/// Radius at or below the critical radius of the isotropic metric form.
struct InsideCriticalRadiusError : Error {
  using Error::Error;
};

struct BadRadiiError : Error {
  using Error::Error;
};

struct BelowHorizonError : Error {
  using Error::Error;
};

/// The radial velocity radicand went negative mid-integration.
struct TurningPointCrossedError : Error {
  using Error::Error;
};

struct NonFiniteIntegrandError : Error {
  using Error::Error;
};

/// Configuration file is malformed or violates the schema.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace slitnet
