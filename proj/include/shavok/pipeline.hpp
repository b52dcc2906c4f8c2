#pragma once

#include "shavok/diagnostics.hpp"
#include "shavok/io.hpp"
#include "shavok/models.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace shavok {

struct PipelineConfig {
  std::string input;                  // preset name or path to a time,value CSV
  std::optional<double> dt_resample;  // spline-resample before fitting
  bool trim_edges = true;             // after resampling, drop one delay window per end
  FitConfig fit;
  std::filesystem::path out_dir = ".";
  std::string model_file = "model.json";
  std::string spectrum_file = "spectrum.json";
  std::string report_file = "report.json";
  std::string plotdata_file = "plotdata.csv";
};

struct PipelineResult {
  DelayModel model;
  StructureReport structure;
  std::vector<std::filesystem::path> written;
};

/// Preset name or CSV path.
TimeSeries load_input(const std::string& input);

/// Series after the optional resampling step.
TimeSeries prepare_series(const PipelineConfig& cfg);

/// Validate, fit, and write model/spectrum/report/plot data. Every file embeds
/// the resolved configuration. Nothing is written if any step fails before output.
PipelineResult run_pipeline(const PipelineConfig& cfg);

Json pipeline_config_to_json(const PipelineConfig& cfg, const FitConfig& resolved);
Json structure_to_json(const StructureReport& r);
Json spectrum_to_json(const DelayModel& model);

/// HAVOK structure versus sampling step (fixed time span) and versus column
/// count (fixed step). Grid points are fitted concurrently.
struct SweepConfig {
  std::string preset = "lorenz_short";  // system and initial state; samples are recomputed
  std::vector<double> dts{0.01, 0.005, 0.001, 0.0005};
  double span = 10.0;
  std::vector<Index> columns{1001, 2001, 5001, 10001};
  double columns_dt = 0.001;
  FitConfig fit = [] {
    FitConfig f;
    f.delays = 51;
    f.rank = 5;
    f.forcing = false;
    return f;
  }();
};

struct SweepPoint {
  double dt = 0.0;
  Index columns = 0;
  double antisymmetry = 0.0;
  double tridiagonality = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> dt_sweep;
  std::vector<SweepPoint> column_sweep;
};

SweepResult run_sweep(const SweepConfig& cfg);
Json sweep_to_json(const SweepConfig& cfg, const SweepResult& r);

/// Nonincreasing up to at most one adjacent rise of no more than `slack` (relative).
bool nearly_nonincreasing(const std::vector<double>& v, double slack = 0.05);

}  // namespace shavok
