#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slitnet/config.hpp"

using namespace slitnet;

namespace {

SlitGeometry sample_geometry() {
  SlitGeometry g;
  g.source = {0.0, 0.125};
  g.barriers = {{1.0, {-0.5, 0.5}}, {2.25, {-0.3, 0.1, 0.7}}};
  g.detector = {3.5, -0.25};
  g.wavelength = 0.6180339887498949;
  return g;
}

bool geometry_equal(const SlitGeometry& a, const SlitGeometry& b) {
  if (a.source.z != b.source.z || a.source.x != b.source.x) return false;
  if (a.detector.z != b.detector.z || a.detector.x != b.detector.x) {
    return false;
  }
  if (a.wavelength != b.wavelength) return false;
  if (a.barriers.size() != b.barriers.size()) return false;
  for (std::size_t i = 0; i < a.barriers.size(); ++i) {
    if (a.barriers[i].z != b.barriers[i].z) return false;
    if (a.barriers[i].slits != b.barriers[i].slits) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("geometry json round-trips field for field") {
  const SlitGeometry g = sample_geometry();
  const Json j = geometry_to_json(g);
  // through text, as the CLI would see it
  const Json reparsed = Json::parse(j.dump());
  const SlitGeometry back = geometry_from_json(reparsed);
  CHECK(geometry_equal(g, back));
}

TEST_CASE("unknown keys are rejected by name") {
  Json j = geometry_to_json(sample_geometry());
  j["wavelenght"] = 0.5;  // typo
  try {
    geometry_from_json(j);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("wavelenght") != std::string::npos);
  }
}

TEST_CASE("missing keys are named in the diagnostic") {
  Json j = geometry_to_json(sample_geometry());
  j.erase("wavelength");
  try {
    geometry_from_json(j);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("wavelength") != std::string::npos);
  }
}

TEST_CASE("invalid geometries are rejected at parse time") {
  SlitGeometry g = sample_geometry();
  std::swap(g.barriers[0].z, g.barriers[1].z);
  const Json j = geometry_to_json(g);
  CHECK_THROWS_AS(geometry_from_json(j), ConfigError);
}

TEST_CASE("network json round-trips") {
  const SlitGeometry g = sample_geometry();
  const TwoLayerNet net = from_geometry(g);
  const Json j = net_to_json(net);
  const TwoLayerNet back = net_from_json(Json::parse(j.dump()));
  CHECK(back.activation == net.activation);
  CHECK((back.hidden_weights.array() == net.hidden_weights.array()).all());
  CHECK((back.hidden_thresholds.array() == net.hidden_thresholds.array())
            .all());
  CHECK((back.output_weights.array() == net.output_weights.array()).all());
  CHECK(back.output_threshold == net.output_threshold);
}

TEST_CASE("training section parses with defaults") {
  const Json j = Json::parse(R"({
    "dataset": {"kind": "sine", "grid_size": 32, "range": [1.0, 1.5]},
    "learning_rate": 0.001,
    "max_epochs": 500
  })");
  const TrainSection section = train_section_from_json(j, 4);
  CHECK(section.config.learning_rate == 0.001);
  CHECK(section.config.max_epochs == 500);
  CHECK(section.config.output_map == OutputMap::Probability);
  CHECK(section.config.calibration == CalibrationMode::Affine);
  CHECK(section.dataset.dim == 4);
  CHECK(section.dataset.kind == DatasetKind::Sine);
}

TEST_CASE("training section rejects unknown dataset kinds") {
  const Json j = Json::parse(R"({
    "dataset": {"kind": "polynomial", "grid_size": 8, "range": [0, 1]},
    "learning_rate": 0.1,
    "max_epochs": 10
  })");
  CHECK_THROWS_AS(train_section_from_json(j, 3), ConfigError);
}

TEST_CASE("training section parses bounds and modes") {
  const Json j = Json::parse(R"({
    "dataset": {"kind": "constant", "grid_size": 4, "range": [0, 1], "level": 0.25},
    "learning_rate": 0.01,
    "max_epochs": 50,
    "output_map": "real_part",
    "calibration": "none",
    "seed": 7,
    "convergence_mse": 1e-6,
    "slit_bounds": [[-1.5, 1.5], [-2.0, 2.0]]
  })");
  const TrainSection section = train_section_from_json(j, 3);
  CHECK(section.config.output_map == OutputMap::RealPart);
  CHECK(section.config.calibration == CalibrationMode::None);
  CHECK(section.config.seed == 7);
  CHECK(section.config.convergence_mse == 1e-6);
  REQUIRE(section.config.slit_bounds.size() == 2);
  CHECK(section.config.slit_bounds[1].hi == 2.0);
  CHECK(section.dataset.level == 0.25);
}

TEST_CASE("constants and quadrature sections validate") {
  CHECK(constants_from_json(Json::parse(R"({"G": 2.0})")).G == 2.0);
  CHECK_THROWS_AS(constants_from_json(Json::parse(R"({"G": -1.0})")), Error);
  CHECK_THROWS_AS(constants_from_json(Json::parse(R"({"g": 1.0})")),
                  ConfigError);

  const QuadratureConfig quad =
      quadrature_from_json(Json::parse(R"({"steps": 2000, "richardson": true})"));
  CHECK(quad.steps == 2000);
  CHECK(quad.richardson);
  CHECK_THROWS_AS(quadrature_from_json(Json::parse(R"({"steps": 7})")), Error);
}
