#pragma once

#include "shavok/io.hpp"

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace shavok {

/// Outcome of one reproduction scenario: named metrics plus a pass verdict
/// against the scenario's threshold.
struct ScenarioResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string summary;
  std::map<std::string, double> metrics;
  std::vector<std::string> notes;
};

ScenarioResult scenario_two_tone_curvatures();   // 1
ScenarioResult scenario_shavok_curvatures();     // 2
ScenarioResult scenario_structure_comparison();  // 3
ScenarioResult scenario_polynomial_basis();      // 4
ScenarioResult scenario_sweep_monotonicity();    // 5
ScenarioResult scenario_interpolation_rescue();  // 6
ScenarioResult scenario_short_data_spectra();    // 7
ScenarioResult scenario_stability();             // 8
ScenarioResult scenario_derivative_ratio_limit();      // 9
ScenarioResult scenario_oracle_equivalence();    // 10

const std::vector<std::string>& scenario_names();

/// By name or by number ("1".."10"); "all" is handled by the caller.
ScenarioResult reproduce(std::string_view name);

Json scenario_to_json(const ScenarioResult& r);

/// Reference curvature matrices for the two-tone example (HAVOK and sHAVOK, 4 x 4).
Matrix reference_havok_two_tone();
Matrix reference_shavok_two_tone();

/// Curvatures of x = sin t + sin 2t from exact derivatives at the window
/// centres t = 0.02, 0.021, ..., 9.98.
std::array<double, 3> two_tone_reference_curvatures();

}  // namespace shavok
