#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "slitnet/amplitude.hpp"
#include "slitnet/geometry.hpp"

namespace slitnet {

struct Sample {
  MediumVector input;
  double target = 0.0;
};

using Dataset = std::vector<Sample>;

/// How the complex amplitude is read out as a real model output.
enum class OutputMap { Probability, RealPart };

enum class CalibrationMode { None, Affine };

/// Trainable affine readout y = scale * y_raw + offset. Raw probabilities
/// range over [0, N^2] for N paths, so hitting arbitrary real targets
/// needs the two extra scalars.
struct Calibration {
  double scale = 1.0;
  double offset = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct TrainConfig {
  double learning_rate = 0.05;
  int max_epochs = 1000;
  OutputMap output_map = OutputMap::Probability;
  CalibrationMode calibration = CalibrationMode::Affine;
  std::uint64_t seed = 0;
  double convergence_mse = 0.0;
  /// One interval per barrier; empty means unbounded.
  std::vector<Interval> slit_bounds;
};

/// Per-sample evaluations may run on worker threads; accumulation stays
/// in sample order, so results are bitwise identical to sequential mode.
struct TrainExec {
  bool parallel = false;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct TrainReport {
  SlitGeometry final_geometry;
  Calibration calibration;
  std::vector<double> mse_trace;
  double final_mse = 0.0;
  bool converged = false;
  bool aborted_nonfinite = false;
  int epochs_run = 0;
};

/// Readout of the apparatus for one medium vector under the configured
/// output map and calibration.
double model_output(const SlitGeometry& g, const MediumVector& n,
                    const TrainConfig& cfg, const Calibration& calib = {});

/// Mean squared error of the calibrated readout over the dataset.
double loss(const SlitGeometry& g, const Dataset& data, const TrainConfig& cfg,
            const Calibration& calib = {}, const TrainExec& exec = {});

/// Number of trainable slit positions.
std::size_t slit_parameter_count(const SlitGeometry& g);

/// Analytic MSE gradient. Layout: slit transverse positions barrier by
/// barrier in slit order, then d/d scale and d/d offset when affine
/// calibration is enabled. Each slit position reaches the loss through
/// the two path segments adjacent to it in every path passing through it.
Eigen::VectorXd grad_slits(const SlitGeometry& g, const Dataset& data,
                           const TrainConfig& cfg, const Calibration& calib = {},
                           const TrainExec& exec = {});

/// Full-batch gradient descent on slit positions (and calibration
/// parameters), positions clamped to slit_bounds after every step. Keeps
/// and reports the best geometry seen. Stops on max_epochs or when the
/// epoch MSE falls to convergence_mse; a non-finite loss aborts with the
/// report accumulated so far.
TrainReport train(const SlitGeometry& g0, const Dataset& data,
                  const TrainConfig& cfg, const TrainExec& exec = {});

enum class DatasetKind { Constant, Linear, Sine, GaussianBump };

/// Grid dataset: the first medium component sweeps [lo, hi] on a regular
/// grid, remaining components stay at 1 (vacuum); the target is the named
/// closed-form function of the swept component.
struct DatasetSpec {
  DatasetKind kind = DatasetKind::Sine;
  int dim = 2;
  int grid_size = 32;
  double lo = 1.0;
  double hi = 1.5;
  double level = 0.7;  // Constant target value
};

Dataset make_dataset(const DatasetSpec& spec);

}  // namespace slitnet
