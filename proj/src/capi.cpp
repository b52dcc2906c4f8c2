#include "shavok/shavok.h"

#include "shavok/diagnostics.hpp"
#include "shavok/error.hpp"
#include "shavok/geometry.hpp"
#include "shavok/io.hpp"
#include "shavok/pipeline.hpp"
#include "shavok/preprocess.hpp"
#include "shavok/scenarios.hpp"
#include "shavok/systems.hpp"

#include <cstring>
#include <new>
#include <string>

struct shv_series {
  shavok::TimeSeries series;
};

struct shv_model {
  shavok::DelayModel model;
};

namespace {

thread_local std::string last_error;

shv_status status_for(shavok::ErrorKind kind) {
  using shavok::ErrorKind;
  switch (kind) {
    case ErrorKind::parameter:
    case ErrorKind::config: return SHV_ERR_CONFIG;
    case ErrorKind::data: return SHV_ERR_DATA;
    case ErrorKind::numerical:
    case ErrorKind::degenerate: return SHV_ERR_NUMERICAL;
    case ErrorKind::io: return SHV_ERR_IO;
  }
  return SHV_ERR_INTERNAL;
}

template <class F>
shv_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return SHV_OK;
  } catch (const shavok::Error& e) {
    last_error = std::string(shavok::to_string(e.kind())) + " error: " + e.what();
    return status_for(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SHV_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return SHV_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) shavok::fail(shavok::ErrorKind::parameter, std::string(what) + " is NULL");
}

shavok::FitConfig to_cpp(const shv_fit_config& c) {
  shavok::FitConfig f;
  f.delays = static_cast<shavok::Index>(c.delays);
  f.rank = static_cast<shavok::Index>(c.rank);
  f.dt = c.dt;
  f.centering = c.centering != 0;
  f.forcing = c.forcing != 0;
  shavok::require(c.method == SHV_METHOD_HAVOK || c.method == SHV_METHOD_SHAVOK,
                  shavok::ErrorKind::config, "unknown method value");
  shavok::require(c.derivative == SHV_DERIV_FORWARD || c.derivative == SHV_DERIV_CENTRAL,
                  shavok::ErrorKind::config, "unknown derivative value");
  f.method = c.method == SHV_METHOD_HAVOK ? shavok::Method::havok : shavok::Method::shavok;
  f.derivative = c.derivative == SHV_DERIV_FORWARD ? shavok::DerivativeScheme::forward
                                                   : shavok::DerivativeScheme::central;
  f.center_per_half = c.center_per_half != 0;
  f.rank_tolerance = c.rank_tolerance;
  return f;
}

void from_cpp(const shavok::FitConfig& f, shv_fit_config* c) {
  c->delays = static_cast<size_t>(f.delays);
  c->rank = static_cast<size_t>(f.rank);
  c->dt = f.dt;
  c->centering = f.centering ? 1 : 0;
  c->forcing = f.forcing ? 1 : 0;
  c->method = f.method == shavok::Method::havok ? SHV_METHOD_HAVOK : SHV_METHOD_SHAVOK;
  c->derivative = f.derivative == shavok::DerivativeScheme::forward ? SHV_DERIV_FORWARD
                                                                     : SHV_DERIV_CENTRAL;
  c->center_per_half = f.center_per_half ? 1 : 0;
  c->rank_tolerance = f.rank_tolerance;
}

void copy_row_major(const shavok::Matrix& m, double* out) {
  for (shavok::Index i = 0; i < m.rows(); ++i) {
    for (shavok::Index j = 0; j < m.cols(); ++j) *out++ = m(i, j);
  }
}

}  // namespace

extern "C" {

const char* shv_last_error(void) { return last_error.c_str(); }

const char* shv_status_string(shv_status status) {
  switch (status) {
    case SHV_OK: return "ok";
    case SHV_ERR_INTERNAL: return "internal error";
    case SHV_ERR_CONFIG: return "configuration error";
    case SHV_ERR_DATA: return "data error";
    case SHV_ERR_NUMERICAL: return "numerical error";
    case SHV_ERR_IO: return "I/O error";
  }
  return "unknown status";
}

const char* shv_version(void) { return "0.1.0"; }

void shv_fit_config_init(shv_fit_config* cfg) {
  if (cfg != nullptr) from_cpp(shavok::FitConfig{}, cfg);
}

shv_status shv_fit_config_for_preset(const char* preset, shv_fit_config* cfg) {
  return guarded([&] {
    need(preset, "preset");
    need(cfg, "cfg");
    from_cpp(shavok::preset(preset).fit, cfg);
  });
}

shv_status shv_series_from_preset(const char* name, shv_series** out) {
  return guarded([&] {
    need(name, "name");
    need(out, "out");
    *out = new shv_series{shavok::simulate_preset(name)};
  });
}

shv_status shv_series_from_csv(const char* path, shv_series** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new shv_series{shavok::read_csv(path)};
  });
}

shv_status shv_series_from_values(double t0, double dt, const double* values, size_t n,
                                  shv_series** out) {
  return guarded([&] {
    need(values, "values");
    need(out, "out");
    *out = new shv_series{shavok::TimeSeries(t0, dt, std::vector<double>(values, values + n))};
  });
}

shv_status shv_series_resample(const shv_series* s, double dt_new, shv_series** out) {
  return guarded([&] {
    need(s, "series");
    need(out, "out");
    *out = new shv_series{shavok::resample(shavok::spline_fit(s->series), dt_new)};
  });
}

size_t shv_series_length(const shv_series* s) { return s ? s->series.size() : 0; }
double shv_series_dt(const shv_series* s) { return s ? s->series.dt() : 0.0; }
double shv_series_t0(const shv_series* s) { return s ? s->series.t0() : 0.0; }

size_t shv_series_values(const shv_series* s, double* out, size_t n) {
  if (s == nullptr || out == nullptr) return 0;
  const size_t count = std::min(n, s->series.size());
  std::memcpy(out, s->series.values().data(), count * sizeof(double));
  return count;
}

shv_status shv_series_write_csv(const shv_series* s, const char* path) {
  return guarded([&] {
    need(s, "series");
    need(path, "path");
    shavok::write_csv(path, s->series);
  });
}

void shv_series_free(shv_series* s) { delete s; }

shv_status shv_model_fit(const shv_series* s, const shv_fit_config* cfg, shv_model** out) {
  return guarded([&] {
    need(s, "series");
    need(cfg, "cfg");
    need(out, "out");
    *out = new shv_model{shavok::fit(s->series, to_cpp(*cfg))};
  });
}

shv_status shv_model_load_json(const char* path, shv_model** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new shv_model{shavok::model_from_json(shavok::read_json(path))};
  });
}

shv_status shv_model_write_json(const shv_model* m, const char* path) {
  return guarded([&] {
    need(m, "model");
    need(path, "path");
    shavok::write_file_atomic(path, shavok::model_to_json(m->model).dump(2) + "\n");
  });
}

size_t shv_model_state_dim(const shv_model* m) {
  return m ? static_cast<size_t>(m->model.state_dim()) : 0;
}

int shv_model_has_forcing(const shv_model* m) { return m && m->model.has_forcing() ? 1 : 0; }

shv_status shv_model_a(const shv_model* m, double* out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    copy_row_major(m->model.a_continuous, out);
  });
}

shv_status shv_model_a_discrete(const shv_model* m, double* out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    copy_row_major(m->model.a_discrete, out);
  });
}

shv_status shv_model_b(const shv_model* m, double* out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    shavok::require(m->model.has_forcing(), shavok::ErrorKind::config,
                    "model was fitted without forcing");
    const shavok::Vector& b = *m->model.b_continuous;
    std::copy(b.data(), b.data() + b.size(), out);
  });
}

shv_status shv_model_spectrum(const shv_model* m, double* re, double* im) {
  return guarded([&] {
    need(m, "model");
    need(re, "re");
    need(im, "im");
    const auto& ev = m->model.spectrum.eigenvalues;
    for (shavok::Index k = 0; k < ev.size(); ++k) {
      re[k] = ev(k).real();
      im[k] = ev(k).imag();
    }
  });
}

shv_status shv_model_structure(const shv_model* m, shv_structure* out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    const shavok::StructureReport r = shavok::structure_report(m->model.a_continuous);
    *out = {r.antisymmetry, r.tridiagonality, r.offband_max};
  });
}

shv_status shv_model_curvatures(const shv_model* m, double* out) {
  return guarded([&] {
    need(m, "model");
    need(out, "out");
    shavok::require(m->model.speed.has_value(), shavok::ErrorKind::config,
                    "curvatures need a centered fit (no speed estimate)");
    const auto k = shavok::curvatures_from_model(m->model.a_continuous, *m->model.speed);
    std::copy(k.superdiagonal.begin(), k.superdiagonal.end(), out);
  });
}

void shv_model_free(shv_model* m) { delete m; }

shv_status shv_spectrum_distance(const shv_model* a, const shv_model* b, double* mean,
                                 double* max_real_a, double* max_real_b) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    const auto c = shavok::spectrum_distance(a->model.spectrum, b->model.spectrum);
    if (mean) *mean = c.mean_distance;
    if (max_real_a) *max_real_a = c.max_real_part_a;
    if (max_real_b) *max_real_b = c.max_real_part_b;
  });
}

shv_status shv_run_pipeline(const char* input, const shv_fit_config* cfg, double dt_resample,
                            int trim_edges, const char* out_dir) {
  return guarded([&] {
    need(input, "input");
    need(cfg, "cfg");
    need(out_dir, "out_dir");
    shavok::PipelineConfig p;
    p.input = input;
    p.fit = to_cpp(*cfg);
    if (dt_resample > 0.0) p.dt_resample = dt_resample;
    p.trim_edges = trim_edges != 0;
    p.out_dir = out_dir;
    shavok::run_pipeline(p);
  });
}

shv_status shv_simulate_preset(const char* name, const char* path) {
  return guarded([&] {
    need(name, "name");
    need(path, "path");
    const shavok::Preset p = shavok::preset(name);
    const shavok::Trajectory t = shavok::simulate(p.spec);
    std::string out = "time";
    for (shavok::Index j = 0; j < t.states.cols(); ++j) out += ",s" + std::to_string(j);
    out += '\n';
    for (shavok::Index k = 0; k < t.states.rows(); ++k) {
      out += shavok::format_double(static_cast<double>(k) * t.dt);
      for (shavok::Index j = 0; j < t.states.cols(); ++j) {
        out += ',' + shavok::format_double(t.states(k, j));
      }
      out += '\n';
    }
    shavok::write_file_atomic(path, out);
  });
}

shv_status shv_run_sweep(const char* preset, const shv_fit_config* cfg, const char* json_path) {
  return guarded([&] {
    need(json_path, "json_path");
    shavok::SweepConfig s;
    if (preset != nullptr) s.preset = preset;
    if (cfg != nullptr) s.fit = to_cpp(*cfg);
    const auto r = shavok::run_sweep(s);
    shavok::write_file_atomic(json_path, shavok::sweep_to_json(s, r).dump(2) + "\n");
  });
}

shv_status shv_reproduce(const char* name, int* passed, char* summary, size_t summary_len,
                         const char* json_path) {
  return guarded([&] {
    need(name, "name");
    const shavok::ScenarioResult r = shavok::reproduce(name);
    if (passed) *passed = r.passed ? 1 : 0;
    if (summary != nullptr && summary_len > 0) {
      std::string line = r.summary;
      for (const auto& n : r.notes) line += "; " + n;
      const size_t count = std::min(summary_len - 1, line.size());
      std::memcpy(summary, line.data(), count);
      summary[count] = '\0';
    }
    if (json_path != nullptr) {
      shavok::write_file_atomic(json_path, shavok::scenario_to_json(r).dump(2) + "\n");
    }
  });
}

size_t shv_scenario_count(void) { return shavok::scenario_names().size(); }

const char* shv_scenario_name(size_t index) {
  const auto& names = shavok::scenario_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

}  // extern "C"
