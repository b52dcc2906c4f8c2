#pragma once

#include "shavok/embedding.hpp"
#include "shavok/linalg.hpp"
#include "shavok/models.hpp"

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace shavok {

enum class SystemKind { two_tone, lorenz, rossler, double_pendulum };

std::string_view to_string(SystemKind k) noexcept;
SystemKind parse_system_kind(std::string_view s);

/// Parameters by kind (defaults in parentheses):
///   two_tone         omega1 (1), omega2 (2); initial_state unused
///   lorenz           sigma (10), rho (28), beta (8/3); state (x, y, z)
///   rossler          a (0.1), b (0.1), c (14); state (x, y, z)
///   double_pendulum  g (10), l (1), m (1); state (theta1, theta2, dtheta1, dtheta2)
struct SystemSpec {
  SystemKind kind = SystemKind::lorenz;
  std::map<std::string, double> parameters;
  std::vector<double> initial_state;
  double dt = 0.001;
  std::size_t samples = 2;
};

struct Trajectory {
  SystemKind kind = SystemKind::lorenz;
  double dt = 0.0;
  Matrix states;  // samples x state_dim; row k is the state at k * dt
};

/// Fixed-step RK4 (two_tone is evaluated in closed form). Throws config error
/// for unknown parameter names and numerical error if the state stops being finite.
Trajectory simulate(const SystemSpec& spec);

enum class Observable { x, sin_theta1, sin_theta2 };

std::string_view to_string(Observable o) noexcept;
Observable parse_observable(std::string_view s);

TimeSeries measure(const Trajectory& traj, Observable obs);

/// Total energy per unit mass of the double pendulum state (theta1, theta2, dtheta1, dtheta2).
double pendulum_energy(const Vector& state, double g = 10.0, double l = 1.0);

/// Vector field of a spec's ODE; two_tone has none and throws a parameter error.
Vector system_rhs(const SystemSpec& spec, const Vector& state);

/// A named simulation plus the fit settings used for it in the experiments.
struct Preset {
  std::string name;
  SystemSpec spec;
  Observable observable = Observable::x;
  FitConfig fit;
  std::string reference;  // long-run preset used as spectral reference; empty if none
};

const std::vector<std::string>& preset_names();
/// Throws config error for unknown names.
Preset preset(std::string_view name);

/// Simulate and measure a preset.
TimeSeries simulate_preset(std::string_view name);

}  // namespace shavok
