#pragma once

#include "slitnet/training.hpp"

// The reference function-approximation run: a 3-barrier x 3-slit apparatus
// trained against one raised-cosine period of the first medium component
// over [1.0, 1.5], 32 grid points, probability readout with affine
// calibration. Shared by the unit test and the acceptance suite.
namespace train_reference {

inline slitnet::SlitGeometry geometry() {
  slitnet::SlitGeometry g;
  g.source = {0.0, 0.0};
  g.barriers = {{1.0, {0.0, -1.2, 1.2}},
                {2.0, {-0.6, 0.3, 1.4}},
                {3.0, {-1.3, -0.2, 0.8}}};
  g.detector = {4.0, 0.0};
  g.wavelength = 0.3;
  return g;
}

inline slitnet::DatasetSpec dataset_spec() {
  slitnet::DatasetSpec spec;
  spec.kind = slitnet::DatasetKind::Sine;
  spec.dim = 4;
  spec.grid_size = 32;
  spec.lo = 1.0;
  spec.hi = 1.5;
  return spec;
}

inline slitnet::TrainConfig config() {
  slitnet::TrainConfig cfg;
  cfg.learning_rate = 1e-3;
  cfg.max_epochs = 10000;
  cfg.output_map = slitnet::OutputMap::Probability;
  cfg.calibration = slitnet::CalibrationMode::Affine;
  cfg.convergence_mse = 5e-4;
  cfg.slit_bounds = {{-2.0, 2.0}, {-2.0, 2.0}, {-2.0, 2.0}};
  return cfg;
}

}  // namespace train_reference
