#include "shavok/systems.hpp"

#include "shavok/error.hpp"

#include <cmath>
#include <numbers>

namespace shavok {

std::string_view to_string(SystemKind k) noexcept {
  switch (k) {
    case SystemKind::two_tone: return "two_tone";
    case SystemKind::lorenz: return "lorenz";
    case SystemKind::rossler: return "rossler";
    case SystemKind::double_pendulum: return "double_pendulum";
  }
  return "unknown";
}

SystemKind parse_system_kind(std::string_view s) {
  for (auto k : {SystemKind::two_tone, SystemKind::lorenz, SystemKind::rossler,
                 SystemKind::double_pendulum}) {
    if (to_string(k) == s) return k;
  }
  fail(ErrorKind::config, "unknown system kind '" + std::string(s) + "'");
}

std::string_view to_string(Observable o) noexcept {
  switch (o) {
    case Observable::x: return "x";
    case Observable::sin_theta1: return "sin_theta1";
    case Observable::sin_theta2: return "sin_theta2";
  }
  return "unknown";
}

Observable parse_observable(std::string_view s) {
  for (auto o : {Observable::x, Observable::sin_theta1, Observable::sin_theta2}) {
    if (to_string(o) == s) return o;
  }
  fail(ErrorKind::parameter, "unknown observable '" + std::string(s) + "'");
}

namespace {

struct Params {
  std::map<std::string, double> values;
  double operator()(const std::string& key) const { return values.at(key); }
};

Params resolve_parameters(const SystemSpec& spec) {
  Params p;
  switch (spec.kind) {
    case SystemKind::two_tone: p.values = {{"omega1", 1.0}, {"omega2", 2.0}}; break;
    case SystemKind::lorenz: p.values = {{"sigma", 10.0}, {"rho", 28.0}, {"beta", 8.0 / 3.0}}; break;
    case SystemKind::rossler: p.values = {{"a", 0.1}, {"b", 0.1}, {"c", 14.0}}; break;
    case SystemKind::double_pendulum: p.values = {{"g", 10.0}, {"l", 1.0}, {"m", 1.0}}; break;
  }
  for (const auto& [name, value] : spec.parameters) {
    auto it = p.values.find(name);
    require(it != p.values.end(), ErrorKind::config,
            "unknown parameter '" + name + "' for system " + std::string(to_string(spec.kind)));
    require(std::isfinite(value), ErrorKind::config, "parameter '" + name + "' is not finite");
    it->second = value;
  }
  return p;
}

Index state_dim(SystemKind k) {
  switch (k) {
    case SystemKind::two_tone: return 1;
    case SystemKind::lorenz:
    case SystemKind::rossler: return 3;
    case SystemKind::double_pendulum: return 4;
  }
  return 0;
}

Vector rhs(SystemKind kind, const Params& p, const Vector& s) {
  Vector d(s.size());
  switch (kind) {
    case SystemKind::lorenz:
      d << p("sigma") * (s(1) - s(0)), s(0) * (p("rho") - s(2)) - s(1), s(0) * s(1) - p("beta") * s(2);
      break;
    case SystemKind::rossler:
      d << -s(1) - s(2), s(0) + p("a") * s(1), p("b") + s(2) * (s(0) - p("c"));
      break;
    case SystemKind::double_pendulum: {
      // Euler-Lagrange equations of the uniform two-rod Lagrangian, divided by m l^2.
      const double gl = p("g") / p("l");
      const double c = std::cos(s(0) - s(1));
      const double sn = std::sin(s(0) - s(1));
      const double m11 = 4.0 / 3.0, m12 = 0.5 * c, m22 = 1.0 / 3.0;
      const double r1 = -0.5 * s(3) * s(3) * sn - 1.5 * gl * std::sin(s(0));
      const double r2 = 0.5 * s(2) * s(2) * sn - 0.5 * gl * std::sin(s(1));
      const double det = m11 * m22 - m12 * m12;
      d << s(2), s(3), (m22 * r1 - m12 * r2) / det, (m11 * r2 - m12 * r1) / det;
      break;
    }
    case SystemKind::two_tone:
      fail(ErrorKind::parameter, "two_tone has no vector field");
  }
  return d;
}

}  // namespace

Vector system_rhs(const SystemSpec& spec, const Vector& state) {
  require(state.size() == state_dim(spec.kind), ErrorKind::parameter,
          "system_rhs: state has wrong dimension");
  return rhs(spec.kind, resolve_parameters(spec), state);
}

Trajectory simulate(const SystemSpec& spec) {
  require(std::isfinite(spec.dt) && spec.dt > 0.0, ErrorKind::parameter,
          "simulate: dt must be positive");
  require(spec.samples >= 2, ErrorKind::parameter, "simulate: need at least 2 samples");
  const Params p = resolve_parameters(spec);
  const Index dim = state_dim(spec.kind);
  const auto n = static_cast<Index>(spec.samples);

  Trajectory out;
  out.kind = spec.kind;
  out.dt = spec.dt;
  out.states.resize(n, dim);

  if (spec.kind == SystemKind::two_tone) {
    for (Index k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) * spec.dt;
      out.states(k, 0) = std::sin(p("omega1") * t) + std::sin(p("omega2") * t);
    }
    return out;
  }

  require(static_cast<Index>(spec.initial_state.size()) == dim, ErrorKind::config,
          "simulate: " + std::string(to_string(spec.kind)) + " needs an initial state of length " +
              std::to_string(dim));
  Vector s = Eigen::Map<const Vector>(spec.initial_state.data(), dim);
  require(s.allFinite(), ErrorKind::config, "simulate: initial state is not finite");
  out.states.row(0) = s.transpose();
  const double h = spec.dt;
  for (Index k = 1; k < n; ++k) {
    const Vector k1 = rhs(spec.kind, p, s);
    const Vector k2 = rhs(spec.kind, p, s + 0.5 * h * k1);
    const Vector k3 = rhs(spec.kind, p, s + 0.5 * h * k2);
    const Vector k4 = rhs(spec.kind, p, s + h * k3);
    s += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!s.allFinite()) {
      fail(ErrorKind::numerical, "simulate: " + std::string(to_string(spec.kind)) +
                                     " diverged at step " + std::to_string(k));
    }
    out.states.row(k) = s.transpose();
  }
  return out;
}

TimeSeries measure(const Trajectory& traj, Observable obs) {
  const bool pendulum = traj.kind == SystemKind::double_pendulum;
  Index col = 0;
  switch (obs) {
    case Observable::x:
      require(!pendulum, ErrorKind::parameter,
              "measure: observable x is not defined for double_pendulum; use sin_theta1");
      break;
    case Observable::sin_theta1:
    case Observable::sin_theta2:
      require(pendulum, ErrorKind::parameter,
              "measure: " + std::string(to_string(obs)) + " needs a double_pendulum trajectory");
      col = obs == Observable::sin_theta1 ? 0 : 1;
      break;
  }
  std::vector<double> values(static_cast<std::size_t>(traj.states.rows()));
  for (Index k = 0; k < traj.states.rows(); ++k) {
    const double v = traj.states(k, col);
    values[static_cast<std::size_t>(k)] = pendulum ? std::sin(v) : v;
  }
  return TimeSeries(0.0, traj.dt, std::move(values));
}

double pendulum_energy(const Vector& s, double g, double l) {
  require(s.size() == 4, ErrorKind::parameter, "pendulum_energy: state must have 4 entries");
  const double c = std::cos(s(0) - s(1));
  const double kinetic =
      l * l / 6.0 * (s(3) * s(3) + 4.0 * s(2) * s(2) + 3.0 * s(2) * s(3) * c);
  const double potential = -0.5 * g * l * (3.0 * std::cos(s(0)) + std::cos(s(1)));
  return kinetic + potential;
}

namespace {

Preset make_preset(std::string_view name) {
  Preset p;
  p.name = std::string(name);
  FitConfig& f = p.fit;
  if (name == "two_tone") {
    p.spec = {SystemKind::two_tone, {}, {}, 0.001, 10001};
    f.delays = 41;
    f.rank = 4;
    f.forcing = false;
    return p;
  }
  if (name == "lorenz_short" || name == "lorenz_long") {
    p.spec = {SystemKind::lorenz, {}, {-8.0, 8.0, 27.0}, 0.001,
              name == "lorenz_short" ? 3000u : 300000u};
    f.delays = 101;
    f.rank = 6;
    p.reference = "lorenz_long";
    return p;
  }
  if (name == "rossler_short" || name == "rossler_long") {
    p.spec = {SystemKind::rossler, {}, {1.0, 1.0, 1.0}, 0.001,
              name == "rossler_short" ? 70000u : 300000u};
    f.delays = 101;
    f.rank = 6;
    p.reference = "rossler_long";
    return p;
  }
  if (name == "pendulum_short" || name == "pendulum_long") {
    const double half_pi = std::numbers::pi / 2.0;
    p.spec = {SystemKind::double_pendulum, {}, {half_pi, half_pi, -0.01, -0.005}, 0.001,
              name == "pendulum_short" ? 1200u : 100000u};
    p.observable = Observable::sin_theta1;
    f.delays = 401;
    f.rank = 4;
    p.reference = "pendulum_long";
    return p;
  }
  fail(ErrorKind::config, "unknown preset '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"two_tone",      "lorenz_short",   "lorenz_long",
                                              "rossler_short", "rossler_long",   "pendulum_short",
                                              "pendulum_long"};
  return names;
}

Preset preset(std::string_view name) { return make_preset(name); }

TimeSeries simulate_preset(std::string_view name) {
  const Preset p = preset(name);
  return measure(simulate(p.spec), p.observable);
}

}  // namespace shavok
