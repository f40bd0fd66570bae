#include "slitnet/network.hpp"

#include <bit>
#include <cmath>

namespace slitnet {

namespace {

inline double heaviside(double t) { return t >= 0.0 ? 1.0 : 0.0; }

void check_input_size(const TwoLayerNet& net, const Eigen::VectorXd& x) {
  if (x.size() != net.input_count()) {
    throw DimensionMismatchError("input has " + std::to_string(x.size()) +
                                 " entries, network expects " +
                                 std::to_string(net.input_count()));
  }
}

}  // namespace

TwoLayerNet from_geometry(const SlitGeometry& g, std::uint64_t cap) {
  const auto num_hidden = static_cast<Eigen::Index>(count_paths(g, cap));
  const auto num_inputs = static_cast<Eigen::Index>(g.region_count());
  const double k = g.wavenumber();

  TwoLayerNet net;
  net.hidden_weights.resize(num_hidden, num_inputs);
  net.hidden_thresholds = Eigen::VectorXd::Zero(num_hidden);
  net.output_weights = Eigen::VectorXcd::Ones(num_hidden);
  net.activation = Activation::ComplexExponential;

  Eigen::Index h = 0;
  for_each_path(
      g,
      [&](const Path& p) {
        for (Eigen::Index j = 0; j < num_inputs; ++j) {
          net.hidden_weights(h, j) = k * p.segment_lengths[j];
        }
        ++h;
      },
      cap);
  return net;
}

Amplitude forward(const TwoLayerNet& net, const Eigen::VectorXd& x,
                  const SumPolicy& policy) {
  check_input_size(net, x);
  const Eigen::Index num_hidden = net.hidden_count();
  const Eigen::Index num_inputs = net.input_count();

  const auto activation_of = [&](Eigen::Index h) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < num_inputs; ++j) {
      acc += net.hidden_weights(h, j) * x[j];
    }
    return acc;
  };

  const auto hidden_output = [&](Eigen::Index h) -> Amplitude {
    const double a = activation_of(h);
    switch (net.activation) {
      case Activation::ComplexExponential:
        return {std::cos(a), std::sin(a)};
      case Activation::Threshold:
        return {heaviside(a - net.hidden_thresholds[h]), 0.0};
      case Activation::Identity:
        return {a, 0.0};
    }
    return {};
  };

  if (policy.chunk == 0 ||
      static_cast<std::size_t>(num_hidden) <= policy.chunk) {
    CompensatedSum re, im;
    for (Eigen::Index h = 0; h < num_hidden; ++h) {
      const Amplitude contrib = net.output_weights[h] * hidden_output(h);
      re.add(contrib.real());
      im.add(contrib.imag());
    }
    return {re.value(), im.value()};
  }

  // chunked reduction mirroring the amplitude module's contract
  std::vector<Amplitude> contribs(static_cast<std::size_t>(num_hidden));
  for (Eigen::Index h = 0; h < num_hidden; ++h) {
    contribs[static_cast<std::size_t>(h)] =
        net.output_weights[h] * hidden_output(h);
  }
  CompensatedSum re, im;
  const std::size_t chunk = policy.chunk;
  for (std::size_t begin = 0; begin < contribs.size(); begin += chunk) {
    const std::size_t end = std::min(begin + chunk, contribs.size());
    CompensatedSum cre, cim;
    for (std::size_t i = begin; i < end; ++i) {
      cre.add(contribs[i].real());
      cim.add(contribs[i].imag());
    }
    re.add(cre.value());
    im.add(cim.value());
  }
  return {re.value(), im.value()};
}

int boolean_forward(const TwoLayerNet& net, const Eigen::VectorXd& x) {
  if (net.activation != Activation::Threshold) {
    throw WrongActivationError(
        "boolean_forward requires the Threshold activation");
  }
  check_input_size(net, x);
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x[j] != 0.0 && x[j] != 1.0) {
      throw Error("boolean_forward input entries must be 0 or 1");
    }
  }

  double acc = 0.0;
  for (Eigen::Index h = 0; h < net.hidden_count(); ++h) {
    double a = 0.0;
    for (Eigen::Index j = 0; j < net.input_count(); ++j) {
      a += net.hidden_weights(h, j) * x[j];
    }
    acc += net.output_weights[h].real() *
           heaviside(a - net.hidden_thresholds[h]);
  }
  return heaviside(acc - net.output_threshold) > 0.5 ? 1 : 0;
}

TwoLayerNet make_boolean_net(int num_inputs,
                             std::span<const int> truth_table) {
  if (num_inputs < 1 || num_inputs > 20) {
    throw Error("make_boolean_net supports 1..20 inputs");
  }
  const std::size_t patterns = std::size_t{1} << num_inputs;
  if (truth_table.size() != patterns) {
    throw DimensionMismatchError("truth table has " +
                                 std::to_string(truth_table.size()) +
                                 " entries, expected " +
                                 std::to_string(patterns));
  }

  TwoLayerNet net;
  net.activation = Activation::Threshold;
  net.hidden_weights.resize(static_cast<Eigen::Index>(patterns), num_inputs);
  net.hidden_thresholds.resize(static_cast<Eigen::Index>(patterns));
  net.output_weights.resize(static_cast<Eigen::Index>(patterns));
  net.output_threshold = 1.0;

  for (std::size_t p = 0; p < patterns; ++p) {
    const auto h = static_cast<Eigen::Index>(p);
    for (int j = 0; j < num_inputs; ++j) {
      const bool bit = (p >> j) & 1u;
      net.hidden_weights(h, j) = bit ? 1.0 : -1.0;
    }
    // fires exactly on its own pattern: max activation is popcount(p)
    net.hidden_thresholds[h] =
        static_cast<double>(std::popcount(static_cast<unsigned>(p)));
    net.output_weights[h] = truth_table[p] ? 1.0 : 0.0;
  }
  return net;
}

}  // namespace slitnet
