#include "slitnet/config.hpp"

#include <fstream>

namespace slitnet {

Json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError("failed to parse " + path.string() + ": " + e.what());
  }
}

void reject_unknown_keys(const Json& obj,
                         std::initializer_list<std::string_view> allowed,
                         const std::string& context) {
  if (!obj.is_object()) throw ConfigError(context + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const std::string_view a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("unknown key \"" + key + "\" in " + context);
    }
  }
}

const Json& require_key(const Json& obj, std::string_view key,
                        const std::string& context) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ConfigError("missing key \"" + std::string(key) + "\" in " +
                      context);
  }
  return obj.at(std::string(key));
}

double get_double(const Json& obj, std::string_view key,
                  const std::string& context) {
  const Json& v = require_key(obj, key, context);
  if (!v.is_number()) {
    throw ConfigError("key \"" + std::string(key) + "\" in " + context +
                      " must be a number");
  }
  return v.get<double>();
}

std::int64_t get_int(const Json& obj, std::string_view key,
                     const std::string& context) {
  const Json& v = require_key(obj, key, context);
  if (!v.is_number_integer()) {
    throw ConfigError("key \"" + std::string(key) + "\" in " + context +
                      " must be an integer");
  }
  return v.get<std::int64_t>();
}

std::string get_string(const Json& obj, std::string_view key,
                       const std::string& context) {
  const Json& v = require_key(obj, key, context);
  if (!v.is_string()) {
    throw ConfigError("key \"" + std::string(key) + "\" in " + context +
                      " must be a string");
  }
  return v.get<std::string>();
}

namespace {

Point2 point_from_json(const Json& j, const std::string& context) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ConfigError(context + " must be a [z, x] pair");
  }
  return Point2{j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Json geometry_to_json(const SlitGeometry& g) {
  Json j;
  j["source"] = {g.source.z, g.source.x};
  j["detector"] = {g.detector.z, g.detector.x};
  j["wavelength"] = g.wavelength;
  Json barriers = Json::array();
  for (const Barrier& b : g.barriers) {
    Json jb;
    jb["z"] = b.z;
    jb["slits"] = b.slits;
    barriers.push_back(std::move(jb));
  }
  j["barriers"] = std::move(barriers);
  return j;
}

SlitGeometry geometry_from_json(const Json& j) {
  const std::string context = "geometry";
  reject_unknown_keys(j, {"source", "barriers", "detector", "wavelength"},
                      context);
  SlitGeometry g;
  g.source = point_from_json(require_key(j, "source", context), "source");
  g.detector =
      point_from_json(require_key(j, "detector", context), "detector");
  g.wavelength = get_double(j, "wavelength", context);

  const Json& barriers = require_key(j, "barriers", context);
  if (!barriers.is_array()) {
    throw ConfigError("geometry barriers must be an array");
  }
  for (const Json& jb : barriers) {
    reject_unknown_keys(jb, {"z", "slits"}, "barrier");
    Barrier b;
    b.z = get_double(jb, "z", "barrier");
    const Json& slits = require_key(jb, "slits", "barrier");
    if (!slits.is_array() || slits.empty()) {
      throw ConfigError("barrier slits must be a nonempty array");
    }
    for (const Json& s : slits) {
      if (!s.is_number()) throw ConfigError("slit positions must be numbers");
      b.slits.push_back(s.get<double>());
    }
    g.barriers.push_back(std::move(b));
  }

  const ValidationResult check = validate_geometry(g);
  if (!check.ok()) throw ConfigError("invalid geometry: " + check.detail);
  return g;
}

SlitGeometry load_geometry_value(const Json& value,
                                 const std::filesystem::path& base_dir) {
  if (value.is_object()) return geometry_from_json(value);
  if (value.is_string()) {
    std::filesystem::path p = value.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    const Json j = load_json_file(p);
    if (j.is_object() && j.contains("geometry")) {
      return geometry_from_json(j.at("geometry"));
    }
    return geometry_from_json(j);
  }
  throw ConfigError("geometry must be an object or a file path string");
}

namespace {

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::ComplexExponential:
      return "complex_exponential";
    case Activation::Threshold:
      return "threshold";
    case Activation::Identity:
      return "identity";
  }
  return "?";
}

Activation activation_from_name(const std::string& name) {
  if (name == "complex_exponential") return Activation::ComplexExponential;
  if (name == "threshold") return Activation::Threshold;
  if (name == "identity") return Activation::Identity;
  throw ConfigError("unknown activation \"" + name + "\"");
}

}  // namespace

Json net_to_json(const TwoLayerNet& net) {
  Json j;
  j["activation"] = activation_name(net.activation);
  Json weights = Json::array();
  for (Eigen::Index h = 0; h < net.hidden_count(); ++h) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < net.input_count(); ++c) {
      row.push_back(net.hidden_weights(h, c));
    }
    weights.push_back(std::move(row));
  }
  j["hidden_weights"] = std::move(weights);
  j["hidden_thresholds"] = std::vector<double>(
      net.hidden_thresholds.data(),
      net.hidden_thresholds.data() + net.hidden_thresholds.size());
  Json outs = Json::array();
  for (Eigen::Index h = 0; h < net.output_weights.size(); ++h) {
    outs.push_back({net.output_weights[h].real(), net.output_weights[h].imag()});
  }
  j["output_weights"] = std::move(outs);
  j["output_threshold"] = net.output_threshold;
  return j;
}

TwoLayerNet net_from_json(const Json& j) {
  const std::string context = "network";
  reject_unknown_keys(j,
                      {"activation", "hidden_weights", "hidden_thresholds",
                       "output_weights", "output_threshold"},
                      context);
  TwoLayerNet net;
  net.activation = activation_from_name(get_string(j, "activation", context));

  const Json& weights = require_key(j, "hidden_weights", context);
  if (!weights.is_array() || weights.empty()) {
    throw ConfigError("hidden_weights must be a nonempty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(weights.size());
  const auto cols = static_cast<Eigen::Index>(weights[0].size());
  net.hidden_weights.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = weights[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ConfigError("hidden_weights rows must share one length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      net.hidden_weights(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }

  const Json& thresholds = require_key(j, "hidden_thresholds", context);
  if (static_cast<Eigen::Index>(thresholds.size()) != rows) {
    throw ConfigError("hidden_thresholds length must match hidden_weights");
  }
  net.hidden_thresholds.resize(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    net.hidden_thresholds[r] = thresholds[static_cast<std::size_t>(r)].get<double>();
  }

  const Json& outs = require_key(j, "output_weights", context);
  if (static_cast<Eigen::Index>(outs.size()) != rows) {
    throw ConfigError("output_weights length must match hidden_weights");
  }
  net.output_weights.resize(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& w = outs[static_cast<std::size_t>(r)];
    if (!w.is_array() || w.size() != 2) {
      throw ConfigError("output_weights entries must be [re, im] pairs");
    }
    net.output_weights[r] = {w[0].get<double>(), w[1].get<double>()};
  }
  net.output_threshold = get_double(j, "output_threshold", context);
  return net;
}

TrainSection train_section_from_json(const Json& j, int medium_dim) {
  const std::string context = "training";
  reject_unknown_keys(j,
                      {"dataset", "learning_rate", "max_epochs", "output_map",
                       "calibration", "seed", "convergence_mse", "slit_bounds"},
                      context);
  TrainSection section;

  const Json& jd = require_key(j, "dataset", context);
  reject_unknown_keys(jd, {"kind", "grid_size", "range", "level"}, "dataset");
  const std::string kind = get_string(jd, "kind", "dataset");
  if (kind == "constant") {
    section.dataset.kind = DatasetKind::Constant;
  } else if (kind == "linear") {
    section.dataset.kind = DatasetKind::Linear;
  } else if (kind == "sine") {
    section.dataset.kind = DatasetKind::Sine;
  } else if (kind == "gaussian_bump") {
    section.dataset.kind = DatasetKind::GaussianBump;
  } else {
    throw ConfigError("unknown dataset kind \"" + kind +
                      "\"; valid kinds: constant linear sine gaussian_bump");
  }
  section.dataset.dim = medium_dim;
  section.dataset.grid_size =
      static_cast<int>(get_int(jd, "grid_size", "dataset"));
  const Json& range = require_key(jd, "range", "dataset");
  if (!range.is_array() || range.size() != 2) {
    throw ConfigError("dataset range must be [lo, hi]");
  }
  section.dataset.lo = range[0].get<double>();
  section.dataset.hi = range[1].get<double>();
  if (jd.contains("level")) {
    section.dataset.level = get_double(jd, "level", "dataset");
  }

  section.config.learning_rate = get_double(j, "learning_rate", context);
  section.config.max_epochs =
      static_cast<int>(get_int(j, "max_epochs", context));
  if (j.contains("output_map")) {
    const std::string map = get_string(j, "output_map", context);
    if (map == "probability") {
      section.config.output_map = OutputMap::Probability;
    } else if (map == "real_part") {
      section.config.output_map = OutputMap::RealPart;
    } else {
      throw ConfigError("output_map must be \"probability\" or \"real_part\"");
    }
  }
  if (j.contains("calibration")) {
    const std::string mode = get_string(j, "calibration", context);
    if (mode == "affine") {
      section.config.calibration = CalibrationMode::Affine;
    } else if (mode == "none") {
      section.config.calibration = CalibrationMode::None;
    } else {
      throw ConfigError("calibration must be \"affine\" or \"none\"");
    }
  }
  if (j.contains("seed")) {
    section.config.seed = static_cast<std::uint64_t>(get_int(j, "seed", context));
  }
  if (j.contains("convergence_mse")) {
    section.config.convergence_mse = get_double(j, "convergence_mse", context);
  }
  if (j.contains("slit_bounds")) {
    const Json& bounds = j.at("slit_bounds");
    if (!bounds.is_array()) {
      throw ConfigError("slit_bounds must be an array of [lo, hi] pairs");
    }
    for (const Json& iv : bounds) {
      if (!iv.is_array() || iv.size() != 2) {
        throw ConfigError("slit_bounds entries must be [lo, hi] pairs");
      }
      section.config.slit_bounds.push_back(
          Interval{iv[0].get<double>(), iv[1].get<double>()});
    }
  }
  return section;
}

Json report_to_json(const TrainReport& report) {
  Json j;
  j["final_geometry"] = geometry_to_json(report.final_geometry);
  j["calibration"] = {{"scale", report.calibration.scale},
                      {"offset", report.calibration.offset}};
  j["final_mse"] = report.final_mse;
  j["converged"] = report.converged;
  j["aborted_nonfinite"] = report.aborted_nonfinite;
  j["epochs_run"] = report.epochs_run;
  return j;
}

PhysConstants constants_from_json(const Json& j) {
  reject_unknown_keys(j, {"G", "c", "hbar"}, "constants");
  PhysConstants consts;
  if (j.contains("G")) consts.G = get_double(j, "G", "constants");
  if (j.contains("c")) consts.c = get_double(j, "c", "constants");
  if (j.contains("hbar")) consts.hbar = get_double(j, "hbar", "constants");
  consts.validate();
  return consts;
}

QuadratureConfig quadrature_from_json(const Json& j) {
  reject_unknown_keys(j, {"steps", "richardson"}, "quadrature");
  QuadratureConfig quad;
  if (j.contains("steps")) {
    quad.steps = static_cast<std::size_t>(get_int(j, "steps", "quadrature"));
  }
  if (j.contains("richardson")) {
    const Json& r = j.at("richardson");
    if (!r.is_boolean()) {
      throw ConfigError("quadrature richardson must be a boolean");
    }
    quad.richardson = r.get<bool>();
  }
  quad.validate();
  return quad;
}

}  // namespace slitnet
