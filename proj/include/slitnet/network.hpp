#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "slitnet/amplitude.hpp"
#include "slitnet/geometry.hpp"

namespace slitnet {

enum class Activation {
  ComplexExponential,  // f(a) = e^{i a}
  Threshold,           // f(a) = H(a - theta), H(0) = 1
  Identity,            // f(a) = a
};

/// Classical two-layer network: one hidden layer feeding a single linear
/// output neuron, y = sum_h W_h f(sum_j w_{j->h} x_j).
///
/// The image of a slit geometry has one hidden neuron per path, weights
/// w = (2*pi/lambda) * l_{j,path} (premultiplied), all output weights 1,
/// and the complex-exponential activation. Thresholds are used only by
/// the Threshold activation.
struct TwoLayerNet {
  Eigen::MatrixXd hidden_weights;     // H x J
  Eigen::VectorXd hidden_thresholds;  // H, zero unless Threshold
  Eigen::VectorXcd output_weights;    // H
  double output_threshold = 0.0;      // boolean readout only
  Activation activation = Activation::ComplexExponential;

  Eigen::Index hidden_count() const { return hidden_weights.rows(); }
  Eigen::Index input_count() const { return hidden_weights.cols(); }
};

/// Structural image of a slit geometry: hidden neuron h corresponds to
/// the h-th path in canonical enumeration order.
TwoLayerNet from_geometry(const SlitGeometry& g,
                          std::uint64_t cap = kDefaultPathCap);

/// Linear output of the two-layer composition. For the complex
/// exponential this reproduces the path-sum amplitude when x is the
/// medium vector of the originating geometry.
Amplitude forward(const TwoLayerNet& net, const Eigen::VectorXd& x,
                  const SumPolicy& policy = {});

/// Thresholded output of the two-layer composition over binary inputs.
/// Requires the Threshold activation.
int boolean_forward(const TwoLayerNet& net, const Eigen::VectorXd& x);

/// Standard wide construction realizing an arbitrary Boolean function of
/// `num_inputs` variables with 2^d hidden threshold neurons, one per
/// input pattern. truth_table[p] is the value on the pattern whose bit j
/// equals input j.
TwoLayerNet make_boolean_net(int num_inputs, std::span<const int> truth_table);

}  // namespace slitnet
