#include "shavok/preprocess.hpp"

#include "shavok/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace shavok {

SplineModel spline_fit(const TimeSeries& x) {
  const std::size_t n = x.size();
  require(n >= 4, ErrorKind::parameter,
          "spline_fit: need at least 4 samples, got " + std::to_string(n));
  const double h = x.dt();
  const auto y = x.values();

  // Second derivatives at the knots; natural ends, tridiagonal Thomas solve.
  std::vector<double> m(n, 0.0);
  const std::size_t inner = n - 2;
  std::vector<double> diag(inner, 4.0), rhs(inner);
  for (std::size_t i = 0; i < inner; ++i) {
    rhs[i] = 6.0 * (y[i + 2] - 2.0 * y[i + 1] + y[i]) / (h * h);
  }
  for (std::size_t i = 1; i < inner; ++i) {
    const double w = 1.0 / diag[i - 1];
    diag[i] -= w;
    rhs[i] -= w * rhs[i - 1];
  }
  m[inner] = rhs[inner - 1] / diag[inner - 1];
  for (std::size_t i = inner - 1; i-- > 0;) m[i + 1] = (rhs[i] - m[i + 2]) / diag[i];

  SplineModel s;
  s.knots.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.knots[i] = x.time(i);
  s.coefficients.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    s.coefficients[i] = {y[i], (y[i + 1] - y[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0,
                         m[i] / 2.0, (m[i + 1] - m[i]) / (6.0 * h)};
  }
  return s;
}

double SplineModel::evaluate(double t, int order) const {
  require(order >= 0 && order <= 3, ErrorKind::parameter, "spline evaluate: order must be 0..3");
  const double span = end() - start();
  const double slack = 1e-9 * span;
  if (!(t >= start() - slack && t <= end() + slack)) {
    fail(ErrorKind::parameter, "spline evaluate: t = " + std::to_string(t) + " outside [" +
                                   std::to_string(start()) + ", " + std::to_string(end()) +
                                   "] (no extrapolation)");
  }
  auto it = std::upper_bound(knots.begin(), knots.end(), t);
  std::size_t i = it == knots.begin() ? 0 : static_cast<std::size_t>(it - knots.begin()) - 1;
  i = std::min(i, coefficients.size() - 1);
  const double s = t - knots[i];
  const auto& c = coefficients[i];
  switch (order) {
    case 0: return c[0] + s * (c[1] + s * (c[2] + s * c[3]));
    case 1: return c[1] + s * (2.0 * c[2] + 3.0 * s * c[3]);
    case 2: return 2.0 * c[2] + 6.0 * s * c[3];
    default: return 6.0 * c[3];
  }
}

TimeSeries resample(const SplineModel& s, double dt_new) {
  require(std::isfinite(dt_new) && dt_new > 0.0, ErrorKind::parameter,
          "resample: dt must be positive");
  const double span = s.end() - s.start();
  const double steps = std::floor(span / dt_new + 1e-9);
  require(steps >= 1.0, ErrorKind::parameter,
          "resample: dt " + std::to_string(dt_new) + " exceeds the knot span " +
              std::to_string(span));
  const auto count = static_cast<std::size_t>(steps) + 1;
  std::vector<double> values(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double t = std::min(s.start() + static_cast<double>(k) * dt_new, s.end());
    values[k] = s.evaluate(t);
  }
  return TimeSeries(s.start(), dt_new, std::move(values));
}

TimeSeries trim_edges(const TimeSeries& x, std::size_t count) {
  require(x.size() > 2 * count + 1, ErrorKind::parameter,
          "trim_edges: series of " + std::to_string(x.size()) + " samples is too short to trim " +
              std::to_string(count) + " from each end");
  return x.slice(count, x.size() - 2 * count);
}

}  // namespace shavok
