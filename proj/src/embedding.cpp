#include "shavok/embedding.hpp"

#include "shavok/error.hpp"

#include <cmath>
#include <string>

namespace shavok {

TimeSeries::TimeSeries(double t0, double dt, std::vector<double> values)
    : t0_(t0), dt_(dt), values_(std::move(values)) {
  require(std::isfinite(dt_) && dt_ > 0.0, ErrorKind::parameter,
          "time series: dt must be positive");
  require(std::isfinite(t0_), ErrorKind::parameter, "time series: t0 must be finite");
  require(values_.size() >= 2, ErrorKind::parameter,
          "time series: need at least 2 samples, got " + std::to_string(values_.size()));
  for (std::size_t k = 0; k < values_.size(); ++k) {
    require(std::isfinite(values_[k]), ErrorKind::data,
            "time series: sample " + std::to_string(k) + " is not finite");
  }
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
  require(first + count <= values_.size(), ErrorKind::parameter,
          "time series: slice exceeds series length");
  return TimeSeries(time(first), dt_,
                    std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(first),
                                        values_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

HankelEmbedding build_hankel(const TimeSeries& x, Index m) {
  const auto len = static_cast<Index>(x.size());
  require(m >= 2 && m <= len, ErrorKind::parameter,
          "build_hankel: delay count " + std::to_string(m) + " outside [2, " +
              std::to_string(len) + "]");
  const Index n = len - m + 1;
  const auto v = x.values();

  HankelEmbedding out;
  out.h.resize(m, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) out.h(i, j) = v[static_cast<std::size_t>(i + j)];
  }
  out.delays = m;
  out.dt = x.dt();
  out.t0 = x.t0();
  return out;
}

HankelEmbedding center_hankel(const HankelEmbedding& h) {
  require(!h.centered, ErrorKind::parameter, "center_hankel: embedding is already centered");
  require(h.delays % 2 == 1, ErrorKind::parameter,
          "center_hankel: delay count " + std::to_string(h.delays) +
              " is even; drop one sample or use an odd delay count so a central row exists");

  HankelEmbedding out = h;
  const Vector h0 = h.h.row(h.central_row()).transpose();
  out.h.rowwise() -= h0.transpose();
  out.h.row(h.central_row()).setZero();
  out.centered = true;
  out.h0 = h0;
  return out;
}

HankelEmbedding uncenter_hankel(const HankelEmbedding& h) {
  require(h.centered && h.h0.has_value(), ErrorKind::parameter,
          "uncenter_hankel: embedding is not centered");
  HankelEmbedding out = h;
  out.h.rowwise() += h.h0->transpose();
  out.centered = false;
  out.h0.reset();
  return out;
}

std::pair<HankelEmbedding, HankelEmbedding> split_shift(const HankelEmbedding& h) {
  const Index n = h.columns();
  require(n >= 3, ErrorKind::parameter,
          "split_shift: need at least 3 columns, got " + std::to_string(n));
  HankelEmbedding first = h;
  HankelEmbedding second = h;
  first.h = h.h.leftCols(n - 1);
  second.h = h.h.rightCols(n - 1);
  second.t0 = h.t0 + h.dt;
  return {std::move(first), std::move(second)};
}

}  // namespace shavok
