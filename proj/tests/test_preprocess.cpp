#include "shavok/error.hpp"
#include "shavok/preprocess.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace shavok;

namespace {
TimeSeries sample(double (*f)(double), double t0, double dt, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = f(t0 + k * dt);
  return TimeSeries(t0, dt, v);
}
double line(double t) { return 2 * t + 1; }
double constant(double) { return -3.5; }
double sine(double t) { return std::sin(t); }
}  // namespace

TEST_SUITE("preprocess") {

TEST_CASE("linear and constant data are reproduced exactly") {
  const SplineModel s = spline_fit(sample(line, 0.0, 0.5, 9));
  for (double t = 0.0; t <= 4.0; t += 0.037) {
    CHECK(s.evaluate(t) == doctest::Approx(line(t)).epsilon(1e-12));
    CHECK(std::abs(s.evaluate(t, 2)) < 1e-10);
  }
  const SplineModel c = spline_fit(sample(constant, 1.0, 0.1, 6));
  CHECK(c.evaluate(1.234) == doctest::Approx(-3.5));
}

TEST_CASE("sine resampled from dt=0.1 to dt=0.001") {
  const SplineModel s = spline_fit(sample(sine, 0.0, 0.1, 101));
  const TimeSeries fine = resample(s, 0.001);
  CHECK(fine.size() == 10001);
  double interior = 0.0, edge = 0.0;
  for (std::size_t k = 0; k < fine.size(); ++k) {
    const double t = fine.time(k);
    const double e = std::abs(fine[k] - std::sin(t));
    if (t > 0.5 && t < 9.5) {
      interior = std::max(interior, e);
    } else {
      edge = std::max(edge, e);
    }
  }
  // (5/384) h^4 max|f''''| away from the ends.
  CHECK(interior <= 5.0 / 384.0 * 1e-4);
  // Natural end condition pins s'' = 0 where sin'' = -sin(10); the error there
  // is about h^2 |f''| / 20.
  CHECK(edge <= 1.1 * 0.01 * std::abs(std::sin(10.0)) / 20.0);
  CHECK(edge > 1e-4);
}

TEST_CASE("knot interpolation and C2 continuity") {
  const TimeSeries x = sample(sine, 0.0, 0.2, 40);
  const SplineModel s = spline_fit(x);
  double max_second = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(s.evaluate(x.time(i)) - x[i]) <= 1e-12 * std::max(1.0, std::abs(x[i])));
    max_second = std::max(max_second, std::abs(s.evaluate(x.time(i), 2)));
  }
  for (std::size_t i = 1; i + 1 < s.knots.size(); ++i) {
    const auto& left = s.coefficients[i - 1];
    const auto& right = s.coefficients[i];
    const double h = s.knots[i] - s.knots[i - 1];
    const double left_value = left[0] + h * (left[1] + h * (left[2] + h * left[3]));
    const double left_slope = left[1] + h * (2 * left[2] + 3 * h * left[3]);
    const double left_second = 2 * left[2] + 6 * h * left[3];
    CHECK(std::abs(left_value - right[0]) < 1e-12);
    CHECK(std::abs(left_slope - right[1]) < 1e-10);
    CHECK(std::abs(left_second - 2 * right[2]) <= 1e-10 * max_second);
  }
  CHECK(s.evaluate(s.start(), 2) == doctest::Approx(0.0));
  CHECK(std::abs(s.evaluate(s.end(), 2)) < 1e-12);
}

TEST_CASE("resampling at the original step reproduces the samples") {
  const TimeSeries x = sample(sine, 0.5, 0.05, 30);
  const TimeSeries y = resample(spline_fit(x), 0.05);
  REQUIRE(y.size() == x.size());
  for (std::size_t k = 0; k < x.size(); ++k) CHECK(std::abs(y[k] - x[k]) <= 1e-12);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(spline_fit(sample(sine, 0.0, 0.1, 3)), Error);
  const SplineModel s = spline_fit(sample(sine, 0.0, 0.1, 10));
  CHECK_THROWS_AS(s.evaluate(-0.5), Error);
  CHECK_THROWS_AS(s.evaluate(1.0), Error);
  CHECK_THROWS_AS(resample(s, 2.0), Error);
  CHECK_THROWS_AS(resample(s, -1.0), Error);
  CHECK_THROWS_AS(trim_edges(sample(sine, 0.0, 0.1, 10), 5), Error);
  CHECK(trim_edges(sample(sine, 0.0, 0.1, 10), 2).size() == 6);
}

}
