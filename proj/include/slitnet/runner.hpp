#pragma once

#include <filesystem>
#include <optional>

#include "slitnet/config.hpp"

namespace slitnet {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumeric = 2;

/// Componentwise bound for the geometry-vs-network comparison.
inline constexpr double kEquivalenceTol = 1e-12;

struct RunOptions {
  std::filesystem::path config_dir = ".";  // for relative geometry refs
  std::filesystem::path out_dir = ".";
  bool parallel = false;
  std::optional<std::uint64_t> seed;  // overrides the config seed
};

/// Each runner validates its config section, executes, writes output
/// files under out_dir and returns a process exit code. Schema problems
/// throw ConfigError; numerical failures return kExitNumeric.
int run_simulate(const Json& config, const RunOptions& opts);
int run_train(const Json& config, const RunOptions& opts);
int run_equivalence(const Json& config, const RunOptions& opts);
int run_actions(const Json& config, const RunOptions& opts);

}  // namespace slitnet
