#include "slitnet/runner.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include "slitnet/csv.hpp"

namespace slitnet {

namespace {

SumPolicy sum_policy(const RunOptions& opts) {
  if (!opts.parallel) return {};
  return SumPolicy{4096, std::max(1u, std::thread::hardware_concurrency())};
}

struct OutputSpec {
  std::string format = "csv";
  std::string file;
};

OutputSpec output_spec(const Json& config, const std::string& default_file) {
  OutputSpec spec;
  spec.file = default_file;
  if (!config.contains("output")) return spec;
  const Json& j = config.at("output");
  reject_unknown_keys(j, {"format", "file"}, "output");
  if (j.contains("format")) {
    spec.format = get_string(j, "format", "output");
    if (spec.format != "csv" && spec.format != "json") {
      throw ConfigError("output format must be \"csv\" or \"json\"");
    }
  }
  if (j.contains("file")) spec.file = get_string(j, "file", "output");
  return spec;
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

/// Table accumulated as ordered column/value rows so CSV and JSON output
/// render identically ordered fields.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> text_cells;  // parallel to rows
  std::vector<Json> json_rows;

  void add_row(const std::vector<std::pair<std::string, Json>>& cells) {
    if (columns.empty()) {
      for (const auto& [name, value] : cells) columns.push_back(name);
    }
    std::vector<std::string> text;
    Json obj = Json::object();
    for (const auto& [name, value] : cells) {
      if (value.is_number_float()) {
        text.push_back(format_g17(value.get<double>()));
      } else {
        text.push_back(value.is_string() ? value.get<std::string>()
                                         : value.dump());
      }
      obj[name] = value;
    }
    text_cells.push_back(std::move(text));
    json_rows.push_back(std::move(obj));
  }

  void write(const std::filesystem::path& path, const std::string& format) {
    if (format == "json") {
      write_json_file(path, Json(json_rows));
      return;
    }
    CsvWriter csv(path);
    csv.write_header(columns);
    for (const auto& row : text_cells) csv.write_row(row);
  }
};

std::vector<double> linspace(double from, double to, std::int64_t points) {
  if (points < 1) throw ConfigError("sweep needs at least one point");
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    v.push_back(from);
    return v;
  }
  for (std::int64_t i = 0; i < points; ++i) {
    v.push_back(from + (to - from) * static_cast<double>(i) /
                           static_cast<double>(points - 1));
  }
  return v;
}

MediumVector medium_from_json(const Json& j, std::size_t regions,
                              const std::string& context) {
  if (!j.is_array()) throw ConfigError(context + " must be an array");
  if (j.size() != regions) {
    throw ConfigError(context + " has " + std::to_string(j.size()) +
                      " entries, geometry has " + std::to_string(regions) +
                      " regions");
  }
  MediumVector n(static_cast<Eigen::Index>(regions));
  for (std::size_t i = 0; i < regions; ++i) {
    if (!j[i].is_number()) throw ConfigError(context + " entries must be numbers");
    n[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    if (!(n[static_cast<Eigen::Index>(i)] > 0.0)) {
      throw ConfigError(context + " entries must be positive indices");
    }
  }
  return n;
}

}  // namespace

int run_simulate(const Json& config, const RunOptions& opts) {
  reject_unknown_keys(config, {"geometry", "media", "output"}, "simulate config");
  const SlitGeometry g = load_geometry_value(
      require_key(config, "geometry", "simulate config"), opts.config_dir);
  const Json& media = require_key(config, "media", "simulate config");
  reject_unknown_keys(media, {"vector", "sweep", "detector_sweep"}, "media");
  const int specified = static_cast<int>(media.contains("vector")) +
                        static_cast<int>(media.contains("sweep")) +
                        static_cast<int>(media.contains("detector_sweep"));
  if (specified != 1) {
    throw ConfigError(
        "media must specify exactly one of vector, sweep, detector_sweep");
  }

  const SumPolicy policy = sum_policy(opts);
  const std::size_t regions = g.region_count();

  // (sweep_value, amplitude) pairs
  std::vector<std::pair<double, Amplitude>> results;
  if (media.contains("vector")) {
    const MediumVector n =
        medium_from_json(media.at("vector"), regions, "media vector");
    results.emplace_back(0.0, qnn_amplitude(g, n, policy));
  } else if (media.contains("sweep")) {
    const Json& sweep = media.at("sweep");
    reject_unknown_keys(sweep, {"component", "from", "to", "points", "base"},
                        "media sweep");
    const auto component = get_int(sweep, "component", "media sweep");
    if (component < 0 || static_cast<std::size_t>(component) >= regions) {
      throw ConfigError("sweep component out of range");
    }
    MediumVector n = medium_from_json(
        require_key(sweep, "base", "media sweep"), regions, "sweep base");
    const double sweep_from = get_double(sweep, "from", "media sweep");
    const double sweep_to = get_double(sweep, "to", "media sweep");
    if (!(sweep_from > 0.0) || !(sweep_to > 0.0)) {
      throw ConfigError("swept refraction indices must stay positive");
    }
    for (const double value :
         linspace(sweep_from, sweep_to,
                  get_int(sweep, "points", "media sweep"))) {
      n[static_cast<Eigen::Index>(component)] = value;
      results.emplace_back(value, qnn_amplitude(g, n, policy));
    }
  } else {
    const Json& sweep = media.at("detector_sweep");
    reject_unknown_keys(sweep, {"from", "to", "points", "vector"},
                        "detector sweep");
    const MediumVector n = medium_from_json(
        require_key(sweep, "vector", "detector sweep"), regions,
        "detector sweep vector");
    SlitGeometry moved = g;
    for (const double value :
         linspace(get_double(sweep, "from", "detector sweep"),
                  get_double(sweep, "to", "detector sweep"),
                  get_int(sweep, "points", "detector sweep"))) {
      moved.detector.x = value;
      results.emplace_back(value, qnn_amplitude(moved, n, policy));
    }
  }

  Table table;
  for (const auto& [value, a] : results) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      std::cerr << "simulate: non-finite amplitude at sweep value " << value
                << "\n";
      return kExitNumeric;
    }
    table.add_row({{"sweep_value", value},
                   {"re", a.real()},
                   {"im", a.imag()},
                   {"probability", probability(a)}});
  }

  const OutputSpec out = output_spec(config, "simulate.csv");
  table.write(opts.out_dir / out.file, out.format);
  return kExitOk;
}

int run_train(const Json& config, const RunOptions& opts) {
  reject_unknown_keys(config, {"geometry", "training", "output"},
                      "train config");
  const SlitGeometry g0 = load_geometry_value(
      require_key(config, "geometry", "train config"), opts.config_dir);
  TrainSection section =
      train_section_from_json(require_key(config, "training", "train config"),
                              static_cast<int>(g0.region_count()));
  if (opts.seed) section.config.seed = *opts.seed;

  std::string report_file = "report.json";
  std::string trace_file = "mse_trace.csv";
  std::string geometry_file = "final_geometry.json";
  if (config.contains("output")) {
    const Json& j = config.at("output");
    reject_unknown_keys(j, {"report", "trace", "geometry"}, "train output");
    if (j.contains("report")) report_file = get_string(j, "report", "output");
    if (j.contains("trace")) trace_file = get_string(j, "trace", "output");
    if (j.contains("geometry")) {
      geometry_file = get_string(j, "geometry", "output");
    }
  }

  const Dataset data = make_dataset(section.dataset);
  const TrainExec exec{opts.parallel, 0};
  const TrainReport report = train(g0, data, section.config, exec);

  write_json_file(opts.out_dir / report_file, report_to_json(report));

  CsvWriter trace(opts.out_dir / trace_file);
  const std::vector<std::string> cols{"epoch", "mse"};
  trace.write_header(cols);
  for (std::size_t e = 0; e < report.mse_trace.size(); ++e) {
    const std::vector<std::string> row{std::to_string(e),
                                       format_g17(report.mse_trace[e])};
    trace.write_row(row);
  }

  Json geo;
  geo["geometry"] = geometry_to_json(report.final_geometry);
  write_json_file(opts.out_dir / geometry_file, geo);

  if (report.aborted_nonfinite) {
    std::cerr << "train: loss became non-finite after epoch "
              << report.epochs_run << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}

int run_equivalence(const Json& config, const RunOptions& opts) {
  reject_unknown_keys(config,
                      {"geometry", "trials", "seed", "debug_perturb", "output"},
                      "equivalence config");
  const SlitGeometry g = load_geometry_value(
      require_key(config, "geometry", "equivalence config"), opts.config_dir);
  const auto trials = get_int(config, "trials", "equivalence config");
  if (trials < 1) throw ConfigError("trials must be >= 1");

  std::uint64_t seed = 0;
  if (config.contains("seed")) {
    seed = static_cast<std::uint64_t>(get_int(config, "seed", "equivalence config"));
  }
  if (opts.seed) seed = *opts.seed;

  TwoLayerNet net = from_geometry(g);
  if (config.contains("debug_perturb")) {
    // sensitivity check: a corrupted weight must break the equivalence
    net.hidden_weights(0, 0) +=
        get_double(config, "debug_perturb", "equivalence config");
  }

  const SumPolicy policy = sum_policy(opts);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> index_dist(0.5, 2.0);

  Table table;
  bool all_within = true;
  for (std::int64_t t = 0; t < trials; ++t) {
    MediumVector n(static_cast<Eigen::Index>(g.region_count()));
    for (Eigen::Index j = 0; j < n.size(); ++j) n[j] = index_dist(rng);
    const Amplitude from_paths = qnn_amplitude(g, n, policy);
    const Amplitude from_net = forward(net, n, policy);
    const double dre = std::abs(from_paths.real() - from_net.real());
    const double dim = std::abs(from_paths.imag() - from_net.imag());
    const double worst = std::max(dre, dim);
    all_within = all_within && worst < kEquivalenceTol;
    table.add_row({{"trial", static_cast<double>(t)},
                   {"diff_re", dre},
                   {"diff_im", dim},
                   {"max_abs_diff", worst}});
  }

  const OutputSpec out = output_spec(config, "equivalence.csv");
  table.write(opts.out_dir / out.file, out.format);

  if (!all_within) {
    std::cerr << "equivalence: difference reached or exceeded "
              << kEquivalenceTol << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}

namespace {

std::vector<double> grid_axis(const Json& grid, const std::string& name) {
  const Json& axis = require_key(grid, name, "actions grid");
  if (axis.is_array()) {
    std::vector<double> values;
    for (const Json& v : axis) {
      if (!v.is_number()) {
        throw ConfigError("grid axis \"" + name + "\" must hold numbers");
      }
      values.push_back(v.get<double>());
    }
    if (values.empty()) {
      throw ConfigError("grid axis \"" + name + "\" is empty");
    }
    return values;
  }
  if (axis.is_object()) {
    reject_unknown_keys(axis, {"from", "to", "points"}, "grid axis " + name);
    return linspace(get_double(axis, "from", name), get_double(axis, "to", name),
                    get_int(axis, "points", name));
  }
  throw ConfigError("grid axis \"" + name +
                    "\" must be an array or a from/to/points object");
}

// cartesian product over the axes, last axis fastest
void product_foreach(const std::vector<std::vector<double>>& axes,
                     const std::function<void(const std::vector<double>&)>& fn) {
  std::vector<std::size_t> idx(axes.size(), 0);
  std::vector<double> point(axes.size());
  for (;;) {
    for (std::size_t i = 0; i < axes.size(); ++i) point[i] = axes[i][idx[i]];
    fn(point);
    std::size_t i = axes.size();
    for (;;) {
      if (i == 0) return;
      --i;
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
  }
}

}  // namespace

int run_actions(const Json& config, const RunOptions& opts) {
  reject_unknown_keys(config, {"actions", "output"}, "actions config");
  const Json& spec = require_key(config, "actions", "actions config");
  reject_unknown_keys(
      spec, {"model", "grid", "quadrature", "constants", "ode_steps"},
      "actions");
  const std::string model = get_string(spec, "model", "actions");
  const Json& grid = require_key(spec, "grid", "actions");

  PhysConstants consts;
  if (spec.contains("constants")) {
    consts = constants_from_json(spec.at("constants"));
  }
  QuadratureConfig quad;
  if (spec.contains("quadrature")) {
    quad = quadrature_from_json(spec.at("quadrature"));
  }
  std::size_t ode_steps = 4096;
  if (spec.contains("ode_steps")) {
    ode_steps = static_cast<std::size_t>(get_int(spec, "ode_steps", "actions"));
  }

  Table table;
  const auto result_cells =
      [](const ActionResult& r) -> std::vector<std::pair<std::string, Json>> {
    return {{"closed_form", r.closed_form},
            {"numeric", r.numeric},
            {"input_factor", r.input_factor},
            {"weight_factor", r.weight_factor},
            {"rel_error", r.rel_error}};
  };
  const auto append = [&table](std::vector<std::pair<std::string, Json>> head,
                               std::vector<std::pair<std::string, Json>> tail) {
    head.insert(head.end(), tail.begin(), tail.end());
    table.add_row(head);
  };

  try {
    if (model == "rock") {
      reject_unknown_keys(grid, {"m", "M", "R_E", "R"}, "rock grid");
      product_foreach(
          {grid_axis(grid, "m"), grid_axis(grid, "M"), grid_axis(grid, "R_E"),
           grid_axis(grid, "R")},
          [&](const std::vector<double>& p) {
            const ActionResult r =
                rock_action(p[0], p[1], p[2], p[3], consts, quad);
            append({{"model", "rock"},
                    {"m", p[0]},
                    {"M", p[1]},
                    {"R_E", p[2]},
                    {"R", p[3]}},
                   result_cells(r));
          });
    } else if (model == "desitter") {
      reject_unknown_keys(grid, {"Lambda", "T"}, "desitter grid");
      product_foreach(
          {grid_axis(grid, "Lambda"), grid_axis(grid, "T")},
          [&](const std::vector<double>& p) {
            const ActionResult r = desitter_action(p[0], p[1], quad);
            auto cells = result_cells(r);
            cells.emplace_back("tanh_form",
                               desitter_action_tanh_form(p[0], p[1]));
            append({{"model", "desitter"}, {"Lambda", p[0]}, {"T", p[1]}},
                   std::move(cells));
          });
    } else if (model == "inflation") {
      reject_unknown_keys(grid, {"V", "T"}, "inflation grid");
      product_foreach(
          {grid_axis(grid, "V"), grid_axis(grid, "T")},
          [&](const std::vector<double>& p) {
            const ActionResult r = inflation_action(p[0], p[1], consts, quad);
            const double exact = inflation_exact_action(p[0], p[1], consts);
            auto cells = result_cells(r);
            cells.emplace_back("exact", exact);
            cells.emplace_back("approx_vs_exact",
                               std::abs(r.closed_form - exact) /
                                   std::abs(exact));
            append({{"model", "inflation"}, {"V", p[0]}, {"T", p[1]}},
                   std::move(cells));
          });
    } else if (model == "schwarzschild") {
      reject_unknown_keys(grid, {"m", "M", "E", "r_start", "t_span", "direction"},
                          "schwarzschild grid");
      product_foreach(
          {grid_axis(grid, "m"), grid_axis(grid, "M"), grid_axis(grid, "E"),
           grid_axis(grid, "r_start"), grid_axis(grid, "t_span"),
           grid_axis(grid, "direction")},
          [&](const std::vector<double>& p) {
            const int direction = static_cast<int>(p[5]);
            const ActionResult r = schwarzschild_radial_action(
                p[0], p[1], p[2], p[3], p[4], direction, consts, ode_steps);
            append({{"model", "schwarzschild"},
                    {"m", p[0]},
                    {"M", p[1]},
                    {"E", p[2]},
                    {"r_start", p[3]},
                    {"t_span", p[4]},
                    {"direction", static_cast<double>(direction)}},
                   result_cells(r));
          });
    } else {
      throw ConfigError("unknown model \"" + model +
                        "\"; valid models: rock desitter inflation schwarzschild");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    std::cerr << "actions: " << e.what() << "\n";
    return kExitNumeric;
  }

  const OutputSpec out = output_spec(config, "actions.csv");
  table.write(opts.out_dir / out.file, out.format);
  return kExitOk;
}

}  // namespace slitnet
