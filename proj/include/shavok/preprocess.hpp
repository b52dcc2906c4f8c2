#pragma once

#include "shavok/embedding.hpp"

#include <array>
#include <vector>

namespace shavok {

/// Natural cubic spline. On [knots[i], knots[i+1]] with s = t - knots[i]:
///   y = c[0] + c[1] s + c[2] s^2 + c[3] s^3.
struct SplineModel {
  std::vector<double> knots;
  std::vector<std::array<double, 4>> coefficients;  // one per interval

  double start() const { return knots.front(); }
  double end() const { return knots.back(); }

  /// Value (order 0) or derivative (orders 1..3). Throws parameter error
  /// outside [start, end].
  double evaluate(double t, int order = 0) const;
};

/// Natural cubic spline through every sample; needs at least 4 samples.
SplineModel spline_fit(const TimeSeries& x);

/// Uniform samples t0, t0 + dt_new, ... up to the last knot (within 1e-9 of a step).
TimeSeries resample(const SplineModel& s, double dt_new);

/// Drop `count` samples from each end (edge error of the natural boundary).
TimeSeries trim_edges(const TimeSeries& x, std::size_t count);

}  // namespace shavok
