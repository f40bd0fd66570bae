#include "slitnet/training.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace slitnet {

namespace {

constexpr double kDegenerateLength = 1e-12;
constexpr double kSlitCollision = 1e-9;
constexpr int kMaxStepRetries = 40;

struct GeomCache {
  double k = 0.0;
  PathSet paths;
  // per path, per barrier: derivative of the adjacent segment lengths
  // with respect to the slit transverse position
  std::vector<std::vector<double>> dlen_prev;
  std::vector<std::vector<double>> dlen_next;
  std::vector<std::size_t> param_offset;  // per barrier
  std::size_t slit_params = 0;
};

GeomCache build_cache(const SlitGeometry& g, bool want_grad) {
  GeomCache cache;
  cache.k = g.wavenumber();
  cache.paths = enumerate_paths(g);

  const std::size_t num_barriers = g.barrier_count();
  cache.param_offset.resize(num_barriers);
  std::size_t offset = 0;
  for (std::size_t b = 0; b < num_barriers; ++b) {
    cache.param_offset[b] = offset;
    offset += g.barriers[b].slits.size();
  }
  cache.slit_params = offset;

  if (!want_grad) return cache;

  cache.dlen_prev.resize(cache.paths.size());
  cache.dlen_next.resize(cache.paths.size());
  for (std::size_t pi = 0; pi < cache.paths.size(); ++pi) {
    const Path& p = cache.paths[pi];
    auto& dprev = cache.dlen_prev[pi];
    auto& dnext = cache.dlen_next[pi];
    dprev.resize(num_barriers);
    dnext.resize(num_barriers);
    for (std::size_t b = 0; b < num_barriers; ++b) {
      const double x_here =
          g.barriers[b].slits[static_cast<std::size_t>(p.slit_choices[b])];
      const double x_before =
          b == 0 ? g.source.x
                 : g.barriers[b - 1]
                       .slits[static_cast<std::size_t>(p.slit_choices[b - 1])];
      const double x_after =
          b + 1 == num_barriers
              ? g.detector.x
              : g.barriers[b + 1]
                    .slits[static_cast<std::size_t>(p.slit_choices[b + 1])];
      const double len_prev = p.segment_lengths[static_cast<Eigen::Index>(b)];
      const double len_next =
          p.segment_lengths[static_cast<Eigen::Index>(b) + 1];
      if (len_prev < kDegenerateLength || len_next < kDegenerateLength) {
        throw DegenerateSegmentError(
            "segment adjacent to barrier " + std::to_string(b) +
            " is shorter than " + std::to_string(kDegenerateLength));
      }
      dprev[b] = (x_here - x_before) / len_prev;
      dnext[b] = (x_here - x_after) / len_next;
    }
  }
  return cache;
}

void check_dataset(const SlitGeometry& g, const Dataset& data) {
  if (data.empty()) throw EmptyDatasetError("dataset is empty");
  const auto regions = static_cast<Eigen::Index>(g.region_count());
  for (const Sample& s : data) {
    if (s.input.size() != regions) {
      throw DimensionMismatchError(
          "dataset input has " + std::to_string(s.input.size()) +
          " entries, geometry has " + std::to_string(g.region_count()) +
          " regions");
    }
    if ((s.input.array() <= 0.0).any()) {
      throw Error("refraction indices must be positive");
    }
    if (!std::isfinite(s.target)) throw Error("dataset target is not finite");
  }
}

void check_config(const SlitGeometry& g, const TrainConfig& cfg) {
  if (!(cfg.learning_rate > 0.0) || !std::isfinite(cfg.learning_rate)) {
    throw Error("learning_rate must be positive and finite");
  }
  if (cfg.max_epochs < 1) throw Error("max_epochs must be >= 1");
  if (!(cfg.convergence_mse >= 0.0)) {
    throw Error("convergence_mse must be >= 0");
  }
  if (!cfg.slit_bounds.empty() &&
      cfg.slit_bounds.size() != g.barrier_count()) {
    throw Error("slit_bounds must list one interval per barrier");
  }
  for (const Interval& iv : cfg.slit_bounds) {
    if (!(iv.lo < iv.hi)) throw Error("slit bound interval is empty");
  }
}

double raw_output(const Amplitude& a, OutputMap map) {
  return map == OutputMap::Probability ? probability(a) : a.real();
}

// Per-sample squared error, plus (optionally) the gradient row
// d(err^2)/d(param). The row layout matches grad_slits.
double evaluate_sample(const GeomCache& cache, const Sample& sample,
                       const TrainConfig& cfg, const Calibration& calib,
                       double* grad_row) {
  const MediumVector& n = sample.input;
  const double k = cache.k;
  const std::size_t num_paths = cache.paths.size();

  thread_local std::vector<double> cos_v, sin_v;
  cos_v.resize(num_paths);
  sin_v.resize(num_paths);

  CompensatedSum re_sum, im_sum;
  for (std::size_t pi = 0; pi < num_paths; ++pi) {
    const Path& p = cache.paths[pi];
    double phi = 0.0;
    for (Eigen::Index j = 0; j < n.size(); ++j) {
      phi += (k * p.segment_lengths[j]) * n[j];
    }
    cos_v[pi] = std::cos(phi);
    sin_v[pi] = std::sin(phi);
    re_sum.add(cos_v[pi]);
    im_sum.add(sin_v[pi]);
  }
  const double re = re_sum.value();
  const double im = im_sum.value();

  const Amplitude a{re, im};
  const double y_raw = raw_output(a, cfg.output_map);
  const bool affine = cfg.calibration == CalibrationMode::Affine;
  const double y = affine ? calib.scale * y_raw + calib.offset : y_raw;
  const double err = y - sample.target;

  if (grad_row != nullptr) {
    const std::size_t num_slits = cache.slit_params;
    thread_local std::vector<double> g_re, g_im;
    g_re.assign(num_slits, 0.0);
    g_im.assign(num_slits, 0.0);

    const std::size_t num_barriers = cache.param_offset.size();
    for (std::size_t pi = 0; pi < num_paths; ++pi) {
      const Path& p = cache.paths[pi];
      for (std::size_t b = 0; b < num_barriers; ++b) {
        const std::size_t param =
            cache.param_offset[b] + static_cast<std::size_t>(p.slit_choices[b]);
        const double dlen = n[static_cast<Eigen::Index>(b)] *
                                cache.dlen_prev[pi][b] +
                            n[static_cast<Eigen::Index>(b) + 1] *
                                cache.dlen_next[pi][b];
        const double dphi = k * dlen;
        g_re[param] -= sin_v[pi] * dphi;
        g_im[param] += cos_v[pi] * dphi;
      }
    }

    const double scale = affine ? calib.scale : 1.0;
    for (std::size_t s = 0; s < num_slits; ++s) {
      const double dy_raw = cfg.output_map == OutputMap::Probability
                                ? 2.0 * (re * g_re[s] + im * g_im[s])
                                : g_re[s];
      grad_row[s] = 2.0 * err * scale * dy_raw;
    }
    if (affine) {
      grad_row[num_slits] = 2.0 * err * y_raw;
      grad_row[num_slits + 1] = 2.0 * err;
    }
  }
  return err * err;
}

struct EvalOutput {
  double mse = 0.0;
  Eigen::VectorXd grad;  // empty unless requested
};

EvalOutput evaluate(const SlitGeometry& g, const Dataset& data,
                    const TrainConfig& cfg, const Calibration& calib,
                    const TrainExec& exec, bool want_grad) {
  require_valid(g);
  check_dataset(g, data);
  const GeomCache cache = build_cache(g, want_grad);

  const std::size_t num_samples = data.size();
  const bool affine = cfg.calibration == CalibrationMode::Affine;
  const std::size_t num_params =
      want_grad ? cache.slit_params + (affine ? 2 : 0) : 0;

  std::vector<double> sq_err(num_samples, 0.0);
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows;
  if (want_grad) {
    rows.setZero(static_cast<Eigen::Index>(num_samples),
                 static_cast<Eigen::Index>(num_params));
  }

  const auto run_range = [&](std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) {
      double* row = want_grad && num_params > 0
                        ? rows.row(static_cast<Eigen::Index>(i)).data()
                        : nullptr;
      sq_err[i] = evaluate_sample(cache, data[i], cfg, calib, row);
    }
  };

  unsigned workers = 1;
  if (exec.parallel) {
    workers = exec.threads != 0 ? exec.threads
                                : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(num_samples));
  }
  if (workers <= 1) {
    run_range(0, num_samples);
  } else {
    std::vector<std::thread> pool;
    const std::size_t per = (num_samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t first = w * per;
      const std::size_t last = std::min(first + per, num_samples);
      if (first >= last) break;
      pool.emplace_back(run_range, first, last);
    }
    for (auto& t : pool) t.join();
  }

  // accumulate in sample order regardless of the thread layout
  EvalOutput out;
  double total = 0.0;
  for (std::size_t i = 0; i < num_samples; ++i) total += sq_err[i];
  out.mse = total / static_cast<double>(num_samples);

  if (want_grad) {
    Eigen::VectorXd grad =
        Eigen::VectorXd::Zero(static_cast<Eigen::Index>(num_params));
    for (std::size_t i = 0; i < num_samples; ++i) {
      grad += rows.row(static_cast<Eigen::Index>(i)).transpose();
    }
    grad /= static_cast<double>(num_samples);
    out.grad = std::move(grad);
  }
  return out;
}

bool barrier_has_collision(const std::vector<double>& slits) {
  for (std::size_t a = 0; a < slits.size(); ++a) {
    for (std::size_t b = a + 1; b < slits.size(); ++b) {
      if (std::abs(slits[a] - slits[b]) < kSlitCollision) return true;
    }
  }
  return false;
}

bool any_collision(const SlitGeometry& g) {
  for (const Barrier& b : g.barriers) {
    if (barrier_has_collision(b.slits)) return true;
  }
  return false;
}

double clamp_to(double v, const Interval& iv) {
  return std::min(std::max(v, iv.lo), iv.hi);
}

void clamp_geometry(SlitGeometry& g, const std::vector<Interval>& bounds) {
  if (bounds.empty()) return;
  for (std::size_t b = 0; b < g.barriers.size(); ++b) {
    for (double& x : g.barriers[b].slits) x = clamp_to(x, bounds[b]);
  }
}

SlitGeometry apply_step(const SlitGeometry& g, const Eigen::VectorXd& grad,
                        double lr, const std::vector<Interval>& bounds) {
  SlitGeometry next = g;
  std::size_t param = 0;
  for (std::size_t b = 0; b < next.barriers.size(); ++b) {
    for (double& x : next.barriers[b].slits) {
      x -= lr * grad[static_cast<Eigen::Index>(param++)];
    }
  }
  clamp_geometry(next, bounds);
  return next;
}

// Starting point for the affine readout: least-squares fit of
// (scale, offset) against the initial raw outputs. Keeps the first
// epochs well conditioned when raw probabilities dwarf the targets.
Calibration initial_calibration(const SlitGeometry& g, const Dataset& data,
                                const TrainConfig& cfg) {
  if (cfg.calibration != CalibrationMode::Affine) return {};

  TrainConfig raw_cfg = cfg;
  raw_cfg.calibration = CalibrationMode::None;
  double mean_y = 0.0, mean_t = 0.0;
  std::vector<double> raw(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    raw[i] = model_output(g, data[i].input, raw_cfg);
    mean_y += raw[i];
    mean_t += data[i].target;
  }
  mean_y /= static_cast<double>(data.size());
  mean_t /= static_cast<double>(data.size());

  double var_y = 0.0, cov = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    var_y += (raw[i] - mean_y) * (raw[i] - mean_y);
    cov += (raw[i] - mean_y) * (data[i].target - mean_t);
  }

  Calibration calib;
  if (var_y > 1e-18 * std::max(1.0, mean_y * mean_y)) {
    calib.scale = cov / var_y;
    calib.offset = mean_t - calib.scale * mean_y;
  } else {
    calib.scale = 1.0;
    calib.offset = mean_t - mean_y;
  }
  return calib;
}

}  // namespace

double model_output(const SlitGeometry& g, const MediumVector& n,
                    const TrainConfig& cfg, const Calibration& calib) {
  const double y_raw = raw_output(qnn_amplitude(g, n), cfg.output_map);
  if (cfg.calibration == CalibrationMode::Affine) {
    return calib.scale * y_raw + calib.offset;
  }
  return y_raw;
}

double loss(const SlitGeometry& g, const Dataset& data, const TrainConfig& cfg,
            const Calibration& calib, const TrainExec& exec) {
  return evaluate(g, data, cfg, calib, exec, false).mse;
}

std::size_t slit_parameter_count(const SlitGeometry& g) {
  std::size_t count = 0;
  for (const Barrier& b : g.barriers) count += b.slits.size();
  return count;
}

Eigen::VectorXd grad_slits(const SlitGeometry& g, const Dataset& data,
                           const TrainConfig& cfg, const Calibration& calib,
                           const TrainExec& exec) {
  return evaluate(g, data, cfg, calib, exec, true).grad;
}

TrainReport train(const SlitGeometry& g0, const Dataset& data,
                  const TrainConfig& cfg, const TrainExec& exec) {
  require_valid(g0);
  check_dataset(g0, data);
  check_config(g0, cfg);

  SlitGeometry g = g0;
  clamp_geometry(g, cfg.slit_bounds);
  if (any_collision(g)) {
    throw Error("initial slit positions collide (after clamping to bounds)");
  }

  const bool affine = cfg.calibration == CalibrationMode::Affine;
  Calibration calib = initial_calibration(g, data, cfg);
  const std::size_t num_slits = slit_parameter_count(g);

  TrainReport report;
  report.final_geometry = g;
  report.calibration = calib;
  double best = std::numeric_limits<double>::infinity();

  int epoch = 0;
  for (;; ++epoch) {
    EvalOutput eval = evaluate(g, data, cfg, calib, exec, true);
    if (!std::isfinite(eval.mse)) {
      report.aborted_nonfinite = true;
      break;
    }
    report.mse_trace.push_back(eval.mse);
    if (eval.mse < best) {
      best = eval.mse;
      report.final_geometry = g;
      report.calibration = calib;
    }
    if (eval.mse <= cfg.convergence_mse) {
      report.converged = true;
      break;
    }
    if (epoch >= cfg.max_epochs) break;

    // reject steps that merge two slits; halve the rate for this epoch
    double lr = cfg.learning_rate;
    bool moved = false;
    for (int attempt = 0; attempt < kMaxStepRetries; ++attempt) {
      SlitGeometry candidate = apply_step(g, eval.grad, lr, cfg.slit_bounds);
      if (!any_collision(candidate)) {
        g = std::move(candidate);
        moved = true;
        break;
      }
      lr *= 0.5;
    }
    if (affine) {
      calib.scale -= lr * eval.grad[static_cast<Eigen::Index>(num_slits)];
      calib.offset -= lr * eval.grad[static_cast<Eigen::Index>(num_slits) + 1];
    }
    if (!moved && !affine) break;  // nothing left to update
  }

  report.epochs_run = epoch;
  report.final_mse = best;
  return report;
}

Dataset make_dataset(const DatasetSpec& spec) {
  if (spec.grid_size < 2) throw BadRangeError("grid_size must be >= 2");
  if (!(spec.hi > spec.lo) || !std::isfinite(spec.lo) ||
      !std::isfinite(spec.hi)) {
    throw BadRangeError("need finite hi > lo");
  }
  if (!(spec.lo > 0.0)) {
    throw BadRangeError("the swept refraction index must stay positive");
  }
  if (spec.dim < 1) throw BadRangeError("dim must be >= 1");
  if (!std::isfinite(spec.level)) throw BadRangeError("level must be finite");

  const double width = spec.hi - spec.lo;
  const double mid = 0.5 * (spec.lo + spec.hi);
  const double sigma = width / 8.0;

  Dataset data;
  data.reserve(static_cast<std::size_t>(spec.grid_size));
  for (int i = 0; i < spec.grid_size; ++i) {
    const double u = spec.lo + width * static_cast<double>(i) /
                                   static_cast<double>(spec.grid_size - 1);
    Sample s;
    s.input = MediumVector::Ones(spec.dim);
    s.input[0] = u;
    switch (spec.kind) {
      case DatasetKind::Constant:
        s.target = spec.level;
        break;
      case DatasetKind::Linear:
        s.target = (u - spec.lo) / width;
        break;
      case DatasetKind::Sine:
        s.target =
            0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * (u - spec.lo) / width));
        break;
      case DatasetKind::GaussianBump: {
        const double z = (u - mid) / sigma;
        s.target = std::exp(-0.5 * z * z);
        break;
      }
    }
    data.push_back(std::move(s));
  }
  return data;
}

}  // namespace slitnet
