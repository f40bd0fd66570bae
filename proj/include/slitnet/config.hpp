#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "slitnet/actions.hpp"
#include "slitnet/geometry.hpp"
#include "slitnet/network.hpp"
#include "slitnet/training.hpp"

namespace slitnet {

using Json = nlohmann::json;

/// Parses a JSON document from disk; throws ConfigError with the parser
/// diagnostic on failure.
Json load_json_file(const std::filesystem::path& path);

/// Schema helpers. Experiments must be reproducible artifacts, so every
/// object is validated strictly: unknown keys are rejected, missing keys
/// are named in the diagnostic.
void reject_unknown_keys(const Json& obj,
                         std::initializer_list<std::string_view> allowed,
                         const std::string& context);
const Json& require_key(const Json& obj, std::string_view key,
                        const std::string& context);
double get_double(const Json& obj, std::string_view key,
                  const std::string& context);
std::int64_t get_int(const Json& obj, std::string_view key,
                     const std::string& context);
std::string get_string(const Json& obj, std::string_view key,
                       const std::string& context);

Json geometry_to_json(const SlitGeometry& g);
SlitGeometry geometry_from_json(const Json& j);

/// Accepts either an inline geometry object or a path (string) to a JSON
/// file that holds one, possibly wrapped in a {"geometry": ...} envelope;
/// relative paths resolve against base_dir.
SlitGeometry load_geometry_value(const Json& value,
                                 const std::filesystem::path& base_dir);

Json net_to_json(const TwoLayerNet& net);
TwoLayerNet net_from_json(const Json& j);

struct TrainSection {
  TrainConfig config;
  DatasetSpec dataset;
};

/// Parses the "training" section; `medium_dim` is the region count of the
/// accompanying geometry.
TrainSection train_section_from_json(const Json& j, int medium_dim);

Json report_to_json(const TrainReport& report);

PhysConstants constants_from_json(const Json& j);
QuadratureConfig quadrature_from_json(const Json& j);

}  // namespace slitnet
