#include "shavok/pipeline.hpp"

#include "shavok/error.hpp"
#include "shavok/geometry.hpp"
#include "shavok/preprocess.hpp"
#include "shavok/systems.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace shavok {

namespace fs = std::filesystem;

namespace {

bool is_preset(const std::string& name) {
  const auto& names = preset_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace

TimeSeries load_input(const std::string& input) {
  require(!input.empty(), ErrorKind::config, "input: no preset name or CSV path given");
  if (is_preset(input)) return simulate_preset(input);
  if (!fs::exists(input)) {
    fail(ErrorKind::io, "input '" + input + "' is neither a preset (" + [] {
      std::string all;
      for (const auto& n : preset_names()) all += (all.empty() ? "" : ", ") + n;
      return all;
    }() + ") nor a readable file");
  }
  return read_csv(input);
}

TimeSeries prepare_series(const PipelineConfig& cfg) {
  TimeSeries x = load_input(cfg.input);
  if (!cfg.dt_resample) return x;
  TimeSeries fine = resample(spline_fit(x), *cfg.dt_resample);
  if (cfg.trim_edges) fine = trim_edges(fine, static_cast<std::size_t>(cfg.fit.delays));
  return fine;
}

Json pipeline_config_to_json(const PipelineConfig& cfg, const FitConfig& resolved) {
  Json j;
  j["input"] = cfg.input;
  j["dt_resample"] = cfg.dt_resample ? Json(*cfg.dt_resample) : Json(nullptr);
  j["trim_edges"] = cfg.trim_edges;
  j["fit"] = config_to_json(resolved);
  return j;
}

Json structure_to_json(const StructureReport& r) {
  return Json{{"antisymmetry", r.antisymmetry},
              {"tridiagonality", r.tridiagonality},
              {"offband_max", r.offband_max},
              {"superdiagonal", r.superdiagonal},
              {"subdiagonal", r.subdiagonal}};
}

Json spectrum_to_json(const DelayModel& model) {
  Json j;
  j["continuous"] = complex_to_json(model.spectrum.eigenvalues);
  j["discrete"] = complex_to_json(eigen_nonsymmetric(model.a_discrete).eigenvalues);
  return j;
}

namespace {

std::string plotdata_csv(const DelayModel& model) {
  const Matrix& v = model.basis.v;
  const Index n = v.rows();
  const Index r = v.cols();
  const Index state = model.state_dim();

  Matrix recon;
  if (model.has_forcing()) {
    const Vector f = v.col(r - 1);
    recon = reconstruct(model, v.row(0).head(state).transpose(), n,
                        std::span<const double>(f.data(), static_cast<std::size_t>(f.size())));
  } else {
    recon = reconstruct(model, v.row(0).head(state).transpose(), n);
  }

  std::string out = "time";
  for (Index j = 0; j < r; ++j) out += ",v" + std::to_string(j + 1);
  if (model.has_forcing()) out += ",forcing";
  for (Index j = 0; j < state; ++j) out += ",recon_v" + std::to_string(j + 1);
  out += '\n';
  for (Index k = 0; k < n; ++k) {
    out += format_double(model.t_first + static_cast<double>(k) * model.config.dt);
    for (Index j = 0; j < r; ++j) out += ',' + format_double(v(k, j));
    if (model.has_forcing()) out += ',' + format_double(v(k, r - 1));
    for (Index j = 0; j < state; ++j) out += ',' + format_double(recon(j, k));
    out += '\n';
  }
  return out;
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  require(cfg.fit.delays >= 2 && cfg.fit.rank >= 2, ErrorKind::config,
          "pipeline: delays and rank must be at least 2");
  if (cfg.dt_resample) {
    require(std::isfinite(*cfg.dt_resample) && *cfg.dt_resample > 0.0, ErrorKind::config,
            "pipeline: dt_resample must be positive");
  }
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  require(fs::is_directory(cfg.out_dir), ErrorKind::io,
          "pipeline: cannot create output directory '" + cfg.out_dir.string() + "'");

  const TimeSeries x = prepare_series(cfg);
  FitConfig fit_cfg = cfg.fit;
  fit_cfg.dt = 0.0;
  DelayModel model;
  try {
    model = fit(x, fit_cfg);
  } catch (const DegenerateError& e) {
    throw DegenerateError(e.index(), std::string("fit: ") + e.what());
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("fit: ") + e.what());
  }

  const Json echo = pipeline_config_to_json(cfg, model.config);
  PipelineResult result;
  result.structure = structure_report(model.a_continuous);

  Json model_json = model_to_json(model);
  model_json["pipeline"] = echo;

  Json spectrum_json;
  spectrum_json["pipeline"] = echo;
  spectrum_json["eigenvalues"] = spectrum_to_json(model);

  Json report;
  report["pipeline"] = echo;
  report["samples"] = x.size();
  report["structure"] = structure_to_json(result.structure);
  report["sigma"] = vector_to_json(model.basis.sigma);
  if (model.speed) {
    report["speed"] = *model.speed;
    report["curvatures"] = curvatures_from_model(model.a_continuous, *model.speed).superdiagonal;
  }
  report["residual"] = model.residual;

  // Render everything before touching the filesystem.
  const std::vector<std::pair<fs::path, std::string>> files{
      {cfg.out_dir / cfg.model_file, model_json.dump(2) + "\n"},
      {cfg.out_dir / cfg.spectrum_file, spectrum_json.dump(2) + "\n"},
      {cfg.out_dir / cfg.report_file, report.dump(2) + "\n"},
      {cfg.out_dir / cfg.plotdata_file, plotdata_csv(model)},
  };
  for (const auto& [path, content] : files) {
    write_file_atomic(path, content);
    result.written.push_back(path);
  }
  result.model = std::move(model);
  return result;
}

bool nearly_nonincreasing(const std::vector<double>& v, double slack) {
  int rises = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] <= v[i - 1]) continue;
    if (v[i] > v[i - 1] * (1.0 + slack)) return false;
    ++rises;
  }
  return rises <= 1;
}

namespace {

std::size_t stride_for(double dt, double fine) {
  const double ratio = dt / fine;
  const double rounded = std::round(ratio);
  require(rounded >= 1.0 && std::abs(ratio - rounded) <= 1e-9 * ratio, ErrorKind::config,
          "sweep: step " + format_double(dt) + " is not a multiple of the finest step " +
              format_double(fine));
  return static_cast<std::size_t>(rounded);
}

TimeSeries subsample(const TimeSeries& x, std::size_t stride, std::size_t count) {
  require((count - 1) * stride < x.size(), ErrorKind::parameter, "sweep: series too short");
  std::vector<double> v(count);
  for (std::size_t k = 0; k < count; ++k) v[k] = x[k * stride];
  return TimeSeries(x.t0(), x.dt() * static_cast<double>(stride), std::move(v));
}

SweepPoint score(const TimeSeries& x, FitConfig cfg, Index columns) {
  cfg.method = Method::havok;
  cfg.dt = 0.0;
  const DelayModel m = fit_havok(x, cfg);
  return {x.dt(), columns, antisymmetry_score(m.a_continuous),
          tridiagonality_score(m.a_continuous)};
}

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg) {
  require(!cfg.dts.empty() || !cfg.columns.empty(), ErrorKind::config, "sweep: empty grid");
  require(cfg.span > 0.0 && cfg.columns_dt > 0.0, ErrorKind::config,
          "sweep: span and columns_dt must be positive");
  for (double dt : cfg.dts) require(dt > 0.0, ErrorKind::config, "sweep: steps must be positive");
  const Index m = cfg.fit.delays;
  for (Index n : cfg.columns) {
    require(n >= 2, ErrorKind::config, "sweep: column counts must be at least 2");
  }

  double fine = cfg.columns.empty() ? cfg.dts.front() : cfg.columns_dt;
  for (double dt : cfg.dts) fine = std::min(fine, dt);

  std::size_t needed = 2;
  std::vector<std::size_t> dt_counts;
  for (double dt : cfg.dts) {
    const auto count = static_cast<std::size_t>(std::floor(cfg.span / dt + 1e-9)) + 1;
    dt_counts.push_back(count);
    needed = std::max(needed, (count - 1) * stride_for(dt, fine) + 1);
  }
  std::size_t col_stride = 1;
  if (!cfg.columns.empty()) {
    col_stride = stride_for(cfg.columns_dt, fine);
    const Index max_n = *std::max_element(cfg.columns.begin(), cfg.columns.end());
    needed = std::max(needed, static_cast<std::size_t>(max_n + m - 2) * col_stride + 1);
  }

  Preset p = preset(cfg.preset);
  p.spec.dt = fine;
  p.spec.samples = needed;
  const TimeSeries x = measure(simulate(p.spec), p.observable);

  std::vector<std::future<SweepPoint>> dt_jobs, col_jobs;
  for (std::size_t i = 0; i < cfg.dts.size(); ++i) {
    const TimeSeries xs = subsample(x, stride_for(cfg.dts[i], fine), dt_counts[i]);
    dt_jobs.push_back(std::async(std::launch::async, [xs, &cfg, m] {
      return score(xs, cfg.fit, static_cast<Index>(xs.size()) - m + 1);
    }));
  }
  for (Index n : cfg.columns) {
    const TimeSeries xs = subsample(x, col_stride, static_cast<std::size_t>(n + m - 1));
    col_jobs.push_back(
        std::async(std::launch::async, [xs, &cfg, n] { return score(xs, cfg.fit, n); }));
  }

  SweepResult r;
  for (std::size_t i = 0; i < dt_jobs.size(); ++i) {
    r.dt_sweep.push_back(dt_jobs[i].get());
    r.dt_sweep.back().dt = cfg.dts[i];  // the requested step, not stride * fine
  }
  for (auto& f : col_jobs) r.column_sweep.push_back(f.get());
  return r;
}

Json sweep_to_json(const SweepConfig& cfg, const SweepResult& r) {
  auto points = [](const std::vector<SweepPoint>& pts) {
    Json a = Json::array();
    for (const auto& p : pts) {
      a.push_back({{"dt", p.dt},
                   {"columns", p.columns},
                   {"antisymmetry", p.antisymmetry},
                   {"tridiagonality", p.tridiagonality}});
    }
    return a;
  };
  auto scores = [](const std::vector<SweepPoint>& pts) {
    std::vector<double> s;
    for (const auto& p : pts) s.push_back(p.antisymmetry);
    return s;
  };
  Json j;
  j["config"] = {{"preset", cfg.preset},
                 {"dts", cfg.dts},
                 {"span", cfg.span},
                 {"columns", cfg.columns},
                 {"columns_dt", cfg.columns_dt},
                 {"fit", config_to_json(cfg.fit)}};
  j["dt_sweep"] = points(r.dt_sweep);
  j["column_sweep"] = points(r.column_sweep);
  j["dt_sweep_nonincreasing"] = nearly_nonincreasing(scores(r.dt_sweep));
  j["column_sweep_nonincreasing"] = nearly_nonincreasing(scores(r.column_sweep));
  return j;
}

}  // namespace shavok
