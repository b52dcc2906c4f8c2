#pragma once

#include "shavok/linalg.hpp"

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace shavok {

/// Uniformly sampled scalar signal: values[k] is the sample at t0 + k * dt.
class TimeSeries {
 public:
  /// Throws parameter error for dt <= 0 or fewer than two samples, data error
  /// for non-finite values.
  TimeSeries(double t0, double dt, std::vector<double> values);

  double t0() const noexcept { return t0_; }
  double dt() const noexcept { return dt_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const { return values_[k]; }
  double time(std::size_t k) const noexcept { return t0_ + static_cast<double>(k) * dt_; }
  double end_time() const noexcept { return time(values_.size() - 1); }

  /// Samples [first, first + count).
  TimeSeries slice(std::size_t first, std::size_t count) const;

 private:
  double t0_;
  double dt_;
  std::vector<double> values_;
};

/// Delay matrix with h(i, j) = x[i + j]. When centered, the central row h0
/// has been subtracted from every row and is kept for later use.
struct HankelEmbedding {
  Matrix h;
  Index delays = 0;
  double dt = 0.0;
  double t0 = 0.0;  // time of x[0]
  bool centered = false;
  std::optional<Vector> h0;

  Index columns() const noexcept { return h.cols(); }
  Index central_row() const noexcept { return (delays - 1) / 2; }
};

HankelEmbedding build_hankel(const TimeSeries& x, Index m);

/// Subtract the central row. Requires odd m and an uncentered input.
HankelEmbedding center_hankel(const HankelEmbedding& h);

/// Add h0 back to every row of a centered embedding.
HankelEmbedding uncenter_hankel(const HankelEmbedding& h);

/// (columns 0..n-2, columns 1..n-1); both halves keep the centering record.
std::pair<HankelEmbedding, HankelEmbedding> split_shift(const HankelEmbedding& h);

}  // namespace shavok
