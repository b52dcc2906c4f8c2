#include "shavok/embedding.hpp"
#include "shavok/error.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace shavok;

namespace {
TimeSeries ramp(std::size_t n, double dt = 1.0) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = static_cast<double>(k + 1);
  return TimeSeries(0.0, dt, v);
}
}  // namespace

TEST_SUITE("embedding") {

TEST_CASE("time series validation") {
  CHECK_THROWS_AS(TimeSeries(0.0, 0.0, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(TimeSeries(0.0, 1.0, {1.0}), Error);
  try {
    TimeSeries(0.0, 1.0, {1.0, std::numeric_limits<double>::infinity()});
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::data);
  }
  const TimeSeries x(1.0, 0.5, {1, 2, 3, 4});
  CHECK(x.time(2) == doctest::Approx(2.0));
  CHECK(x.end_time() == doctest::Approx(2.5));
  const TimeSeries s = x.slice(1, 2);
  CHECK(s.t0() == doctest::Approx(1.5));
  CHECK(s[1] == 3.0);
}

TEST_CASE("hankel layout h(i,j) = x[i+j]") {
  const HankelEmbedding h = build_hankel(ramp(5), 3);
  CHECK(h.h.rows() == 3);
  CHECK(h.h.cols() == 3);
  Matrix expected(3, 3);
  expected << 1, 2, 3, 2, 3, 4, 3, 4, 5;
  CHECK(h.h == expected);
}

TEST_CASE("hankel rejects out-of-range delays") {
  CHECK_THROWS_AS(build_hankel(ramp(5), 1), Error);
  CHECK_THROWS_AS(build_hankel(ramp(5), 6), Error);
  CHECK(build_hankel(ramp(5), 5).h.cols() == 1);
}

TEST_CASE("property: hankel is constant along antidiagonals") {
  std::vector<double> v(50);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::sin(0.37 * static_cast<double>(k * k));
  const HankelEmbedding h = build_hankel(TimeSeries(0.0, 0.1, v), 11);
  for (Index i = 0; i + 1 < h.h.rows(); ++i) {
    for (Index j = 1; j < h.h.cols(); ++j) CHECK(h.h(i + 1, j - 1) == h.h(i, j));
  }
}

TEST_CASE("centering zeroes the central row and round-trips exactly on integers") {
  const HankelEmbedding h = build_hankel(ramp(9), 5);
  const HankelEmbedding c = center_hankel(h);
  CHECK(c.centered);
  CHECK(c.h.row(2).isZero(0.0));
  CHECK(c.h(0, 0) == -2.0);
  CHECK(uncenter_hankel(c).h == h.h);
}

TEST_CASE("centering round trip on real data is exact to rounding") {
  std::vector<double> v(40);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::sin(0.3 * static_cast<double>(k)) + 0.1;
  const HankelEmbedding h = build_hankel(TimeSeries(0.0, 0.1, v), 7);
  const Matrix back = uncenter_hankel(center_hankel(h)).h;
  CHECK((back - h.h).cwiseAbs().maxCoeff() <= 4 * std::numeric_limits<double>::epsilon());
}

TEST_CASE("centering needs an odd delay count and an uncentered input") {
  try {
    center_hankel(build_hankel(ramp(9), 4));
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("odd") != std::string::npos);
  }
  const HankelEmbedding c = center_hankel(build_hankel(ramp(9), 3));
  CHECK_THROWS_AS(center_hankel(c), Error);
  CHECK_THROWS_AS(uncenter_hankel(build_hankel(ramp(9), 3)), Error);
}

TEST_CASE("split_shift produces overlapping halves") {
  const HankelEmbedding h = build_hankel(ramp(6, 0.5), 3);  // 3 x 4
  const auto [a, b] = split_shift(h);
  CHECK(a.h.cols() == 3);
  CHECK(b.h.cols() == 3);
  CHECK(a.h.rightCols(2) == b.h.leftCols(2));
  CHECK(b.t0 == doctest::Approx(0.5));
  CHECK_THROWS_AS(split_shift(build_hankel(ramp(4), 3)), Error);
}

}
