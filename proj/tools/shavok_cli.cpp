// Command-line driver. Links only the C interface.
#include "shavok/shavok.h"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

int exit_code(shv_status s) {
  switch (s) {
    case SHV_OK: return 0;
    case SHV_ERR_CONFIG: return 2;
    case SHV_ERR_DATA:
    case SHV_ERR_IO: return 3;
    case SHV_ERR_NUMERICAL: return 4;
    default: return 1;
  }
}

int report(shv_status s) {
  if (s != SHV_OK) std::cerr << "shavok: " << shv_last_error() << "\n";
  return exit_code(s);
}

struct FitFlags {
  std::string input;
  std::optional<size_t> delays;
  std::optional<size_t> rank;
  std::optional<std::string> method;
  std::optional<std::string> derivative;
  bool no_centering = false;
  bool no_forcing = false;
  bool center_per_half = false;
  std::optional<double> rank_tolerance;

  void attach(CLI::App* app, bool input_required = true) {
    auto* in = app->add_option("--input", input, "preset name or time,value CSV path");
    if (input_required) in->required();
    app->add_option("--delays", delays, "delay count m (odd when centering)");
    app->add_option("--rank", rank, "model rank r");
    app->add_option("--method", method, "havok or shavok")
        ->check(CLI::IsMember({"havok", "shavok"}));
    app->add_option("--derivative", derivative, "forward or central")
        ->check(CLI::IsMember({"forward", "central"}));
    app->add_flag("--no-centering", no_centering, "do not subtract the central row");
    app->add_flag("--no-forcing", no_forcing, "closed model without forcing term");
    app->add_flag("--center-per-half", center_per_half, "sHAVOK: center each shifted window");
    app->add_option("--rank-tolerance", rank_tolerance, "relative singular value cutoff");
  }

  // Preset inputs start from the preset's recommended settings.
  shv_fit_config resolve() const {
    shv_fit_config cfg;
    if (input.empty() || shv_fit_config_for_preset(input.c_str(), &cfg) != SHV_OK) {
      shv_fit_config_init(&cfg);
    }
    if (delays) cfg.delays = *delays;
    if (rank) cfg.rank = *rank;
    if (method) cfg.method = *method == "havok" ? SHV_METHOD_HAVOK : SHV_METHOD_SHAVOK;
    if (derivative) {
      cfg.derivative = *derivative == "forward" ? SHV_DERIV_FORWARD : SHV_DERIV_CENTRAL;
    }
    if (no_centering) cfg.centering = 0;
    if (no_forcing) cfg.forcing = 0;
    if (center_per_half) cfg.center_per_half = 1;
    if (rank_tolerance) cfg.rank_tolerance = *rank_tolerance;
    return cfg;
  }
};

shv_status load_series(const std::string& input, shv_series** out) {
  if (shv_series_from_preset(input.c_str(), out) == SHV_OK) return SHV_OK;
  return shv_series_from_csv(input.c_str(), out);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void print_spectrum(const char* label, shv_model* m) {
  const size_t n = shv_model_state_dim(m);
  std::vector<double> re(n), im(n);
  shv_model_spectrum(m, re.data(), im.data());
  std::printf("  \"%s\": [", label);
  for (size_t k = 0; k < n; ++k) {
    std::printf("%s{\"re\": %.17g, \"im\": %.17g}", k ? ", " : "", re[k], im[k]);
  }
  std::printf("]");
}

int cmd_spectrum(const FitFlags& flags, const std::string& reference) {
  const shv_fit_config cfg = flags.resolve();
  shv_series* series = nullptr;
  shv_model* model = nullptr;
  shv_model* ref = nullptr;
  auto cleanup = [&](int code) {
    shv_model_free(ref);
    shv_model_free(model);
    shv_series_free(series);
    return code;
  };
  shv_status s = load_series(flags.input, &series);
  if (s != SHV_OK) return cleanup(report(s));
  s = shv_model_fit(series, &cfg, &model);
  if (s != SHV_OK) return cleanup(report(s));

  if (!reference.empty()) {
    if (ends_with(reference, ".json")) {
      s = shv_model_load_json(reference.c_str(), &ref);
    } else {
      shv_series* rs = nullptr;
      s = load_series(reference, &rs);
      if (s == SHV_OK) {
        shv_fit_config rcfg = cfg;
        rcfg.method = SHV_METHOD_HAVOK;
        s = shv_model_fit(rs, &rcfg, &ref);
      }
      shv_series_free(rs);
    }
    if (s != SHV_OK) return cleanup(report(s));
  }

  std::printf("{\n");
  print_spectrum("eigenvalues", model);
  if (ref != nullptr) {
    double mean = 0, mra = 0, mrb = 0;
    s = shv_spectrum_distance(model, ref, &mean, &mra, &mrb);
    if (s != SHV_OK) {
      std::printf("\n}\n");
      return cleanup(report(s));
    }
    std::printf(",\n");
    print_spectrum("reference", ref);
    std::printf(",\n  \"mean_distance\": %.17g,\n  \"max_real\": %.17g,\n"
                "  \"reference_max_real\": %.17g",
                mean, mra, mrb);
  }
  std::printf("\n}\n");
  return cleanup(0);
}

int cmd_diagnose(const std::string& path) {
  shv_model* m = nullptr;
  shv_status s = shv_model_load_json(path.c_str(), &m);
  if (s != SHV_OK) return report(s);
  shv_structure st{};
  s = shv_model_structure(m, &st);
  if (s != SHV_OK) {
    shv_model_free(m);
    return report(s);
  }
  std::printf("{\n  \"antisymmetry\": %.17g,\n  \"tridiagonality\": %.17g,\n"
              "  \"offband_max\": %.17g",
              st.antisymmetry, st.tridiagonality, st.offband_max);
  const size_t n = shv_model_state_dim(m);
  std::vector<double> k(n > 0 ? n - 1 : 0);
  if (n > 1 && shv_model_curvatures(m, k.data()) == SHV_OK) {
    std::printf(",\n  \"curvatures\": [");
    for (size_t i = 0; i < k.size(); ++i) std::printf("%s%.17g", i ? ", " : "", k[i]);
    std::printf("]");
  }
  std::printf("\n}\n");
  shv_model_free(m);
  return 0;
}

int cmd_reproduce(const std::string& name, const std::string& out_dir) {
  std::vector<std::string> names;
  if (name == "all") {
    for (size_t i = 0; i < shv_scenario_count(); ++i) names.emplace_back(shv_scenario_name(i));
  } else {
    names.push_back(name);
  }
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
      std::fprintf(stderr, "shavok: cannot create '%s': %s\n", out_dir.c_str(), ec.message().c_str());
      return 3;
    }
  }
  int failures = 0;
  for (const auto& n : names) {
    int passed = 0;
    char summary[1024];
    const std::string json = out_dir.empty() ? std::string() : out_dir + "/" + n + ".json";
    const shv_status s = shv_reproduce(n.c_str(), &passed, summary, sizeof summary,
                                       json.empty() ? nullptr : json.c_str());
    if (s != SHV_OK) return report(s);
    std::printf("[%s] %s: %s\n", passed ? "PASS" : "FAIL", n.c_str(), summary);
    failures += passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delay-embedding linear models (HAVOK and structured HAVOK)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", shv_version());

  auto* simulate = app.add_subcommand("simulate", "simulate a preset and write CSV");
  std::string sim_input, sim_out;
  bool sim_state = false;
  simulate->add_option("--input", sim_input, "preset name")->required();
  simulate->add_option("--out", sim_out, "output CSV path")->required();
  simulate->add_flag("--state", sim_state, "write the full state instead of the measurement");

  auto* fit = app.add_subcommand("fit", "run the pipeline and write model, spectrum, report, plot data");
  FitFlags fit_flags;
  fit_flags.attach(fit);
  double dt_resample = 0.0;
  bool no_trim = false;
  std::string out_dir = ".";
  fit->add_option("--dt-resample", dt_resample, "spline-resample to this step before fitting");
  fit->add_flag("--no-trim-edges", no_trim, "keep resampled edges");
  fit->add_option("--out-dir", out_dir, "directory for outputs");

  auto* spectrum = app.add_subcommand("spectrum", "print the continuous spectrum");
  FitFlags spec_flags;
  spec_flags.attach(spectrum);
  std::string reference;
  spectrum->add_option("--reference", reference,
                       "preset, CSV, or model JSON to compare against (HAVOK fit)");

  auto* diagnose = app.add_subcommand("diagnose", "structure report for a model file");
  std::string model_path;
  diagnose->add_option("--model", model_path, "model JSON")->required();

  auto* sweep = app.add_subcommand("sweep", "structure versus sampling step and column count");
  std::string sweep_input = "lorenz_short", sweep_out = "sweep.json";
  std::optional<size_t> sweep_delays, sweep_rank;
  sweep->add_option("--input", sweep_input, "preset supplying the system");
  sweep->add_option("--delays", sweep_delays, "delay count (default 51)");
  sweep->add_option("--rank", sweep_rank, "rank (default 5)");
  sweep->add_option("--out", sweep_out, "output JSON path");

  auto* repro = app.add_subcommand("reproduce", "run a named scenario or 'all'");
  std::string scenario = "all", repro_dir;
  repro->add_option("scenario", scenario, "scenario name, number, or 'all'");
  repro->add_option("--out-dir", repro_dir, "write one JSON result per scenario here");

  CLI11_PARSE(app, argc, argv);

  if (*simulate) {
    if (sim_state) return report(shv_simulate_preset(sim_input.c_str(), sim_out.c_str()));
    shv_series* s = nullptr;
    shv_status st = shv_series_from_preset(sim_input.c_str(), &s);
    if (st == SHV_OK) st = shv_series_write_csv(s, sim_out.c_str());
    shv_series_free(s);
    return report(st);
  }
  if (*fit) {
    const shv_fit_config cfg = fit_flags.resolve();
    return report(shv_run_pipeline(fit_flags.input.c_str(), &cfg, dt_resample, no_trim ? 0 : 1,
                                   out_dir.c_str()));
  }
  if (*spectrum) return cmd_spectrum(spec_flags, reference);
  if (*diagnose) return cmd_diagnose(model_path);
  if (*sweep) {
    shv_fit_config cfg;
    shv_fit_config_init(&cfg);
    cfg.delays = sweep_delays.value_or(51);
    cfg.rank = sweep_rank.value_or(5);
    cfg.forcing = 0;
    const shv_status st = shv_run_sweep(sweep_input.c_str(), &cfg, sweep_out.c_str());
    if (st == SHV_OK) std::printf("wrote %s\n", sweep_out.c_str());
    return report(st);
  }
  if (*repro) return cmd_reproduce(scenario, repro_dir);
  return 0;
}
