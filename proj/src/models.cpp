#include "shavok/models.hpp"

#include "shavok/error.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace shavok {

std::string_view to_string(Method m) noexcept {
  return m == Method::havok ? "havok" : "shavok";
}

std::string_view to_string(DerivativeScheme d) noexcept {
  return d == DerivativeScheme::forward ? "forward" : "central";
}

Method parse_method(std::string_view s) {
  if (s == "havok") return Method::havok;
  if (s == "shavok") return Method::shavok;
  fail(ErrorKind::config, "unknown method '" + std::string(s) + "' (expected havok|shavok)");
}

DerivativeScheme parse_derivative(std::string_view s) {
  if (s == "forward") return DerivativeScheme::forward;
  if (s == "central") return DerivativeScheme::central;
  fail(ErrorKind::config,
       "unknown derivative scheme '" + std::string(s) + "' (expected forward|central)");
}

namespace {

FitConfig resolve(const TimeSeries& x, const FitConfig& cfg) {
  FitConfig out = cfg;
  const Index m = cfg.delays;
  const Index r = cfg.rank;
  const auto len = static_cast<Index>(x.size());
  require(r >= 2 && r <= m, ErrorKind::parameter,
          "fit: rank " + std::to_string(r) + " must satisfy 2 <= r <= delays (" +
              std::to_string(m) + ")");
  require(m >= 2 && m <= len, ErrorKind::parameter,
          "fit: delay count " + std::to_string(m) + " outside [2, " + std::to_string(len) + "]");
  require(cfg.dt >= 0.0, ErrorKind::parameter, "fit: dt must be positive");
  if (cfg.dt > 0.0) {
    require(std::abs(cfg.dt - x.dt()) <= 1e-12 * x.dt(), ErrorKind::parameter,
            "fit: configured dt " + std::to_string(cfg.dt) + " does not match series dt " +
                std::to_string(x.dt()));
  }
  out.dt = x.dt();
  require(cfg.rank_tolerance > 0.0 && cfg.rank_tolerance < 1.0, ErrorKind::parameter,
          "fit: rank_tolerance must lie in (0, 1)");
  const Index n = len - m + 1;
  require(n >= r + 3, ErrorKind::parameter,
          "fit: " + std::to_string(len) + " samples give " + std::to_string(n) +
              " Hankel columns; need at least rank + 3 = " + std::to_string(r + 3));
  if (cfg.centering) {
    require(m % 2 == 1, ErrorKind::parameter,
            "fit: centering needs an odd delay count (got " + std::to_string(m) +
                "); drop one sample or pick an odd --delays");
  }
  return out;
}

void check_numerical_rank(const Vector& sigma, double tol, const char* what) {
  const Index r = sigma.size();
  if (!(sigma(0) > 0.0) || sigma(r - 1) < tol * sigma(0)) {
    throw DegenerateError(
        static_cast<std::size_t>(r - 1),
        std::string(what) + ": rank " + std::to_string(r) +
            " exceeds the numerical rank of the Hankel matrix (sigma_r / sigma_1 = " +
            (sigma(0) > 0.0 ? std::to_string(sigma(r - 1) / sigma(0)) : std::string("0/0")) +
            ")");
  }
}

ReducedBasis to_basis(SvdTriple s) {
  return ReducedBasis{std::move(s.u), std::move(s.sigma), std::move(s.v)};
}

// Flip pairs of `other` whose left vectors point away from `ref`.
void align_to(const SvdTriple& ref, SvdTriple& other) {
  for (Index j = 0; j < other.u.cols(); ++j) {
    if (ref.u.col(j).dot(other.u.col(j)) < 0.0) {
      other.u.col(j) *= -1.0;
      other.v.col(j) *= -1.0;
    }
  }
}

// Fill a_discrete/a_continuous/b from the coefficient block [A | B] (continuous or discrete).
void assign_from_discrete(DelayModel& model, const Matrix& ab, Index state, double dt) {
  model.a_discrete = ab.leftCols(state);
  model.a_continuous = (model.a_discrete - Matrix::Identity(state, state)) / dt;
  if (ab.cols() > state) {
    model.b_discrete = Vector(ab.col(state));
    model.b_continuous = Vector(ab.col(state) / dt);
  }
}

void assign_from_continuous(DelayModel& model, const Matrix& ab, Index state, double dt) {
  model.a_continuous = ab.leftCols(state);
  model.a_discrete = Matrix::Identity(state, state) + dt * model.a_continuous;
  if (ab.cols() > state) {
    model.b_continuous = Vector(ab.col(state));
    model.b_discrete = Vector(dt * ab.col(state));
  }
}

double window_centre(const TimeSeries& x, Index m) {
  return x.t0() + 0.5 * static_cast<double>(m - 1) * x.dt();
}

}  // namespace

double estimate_speed(const Vector& h0, double dt) {
  require(h0.size() >= 3, ErrorKind::parameter, "estimate_speed: need at least 3 samples");
  require(dt > 0.0, ErrorKind::parameter, "estimate_speed: dt must be positive");
  const Index n = h0.size();
  const Vector d = (h0.tail(n - 2) - h0.head(n - 2)) / (2.0 * dt);
  return d.norm();
}

Matrix havok_regression(const Matrix& trajectory, bool forcing) {
  const Index n = trajectory.rows();
  const Index r = trajectory.cols();
  require(n >= 2 && r >= (forcing ? 2 : 1), ErrorKind::parameter,
          "havok_regression: trajectory too small");
  const Index state = forcing ? r - 1 : r;
  const Matrix current = trajectory.topRows(n - 1).transpose();               // r x (n-1)
  const Matrix next = trajectory.bottomRows(n - 1).leftCols(state).transpose();  // state x (n-1)
  return next * pseudo_inverse(current);
}

DelayModel fit_havok(const TimeSeries& x, const FitConfig& cfg_in) {
  require(cfg_in.method == Method::havok, ErrorKind::parameter,
          "fit_havok: config method is not havok");
  const FitConfig cfg = resolve(x, cfg_in);
  const Index r = cfg.rank;
  const double dt = cfg.dt;

  HankelEmbedding emb = build_hankel(x, cfg.delays);
  DelayModel model;
  if (cfg.centering) {
    emb = center_hankel(emb);
    model.speed = estimate_speed(*emb.h0, dt);
  }
  SvdTriple svd = thin_svd(emb.h, r);
  check_numerical_rank(svd.sigma, cfg.rank_tolerance, "fit_havok");

  const Matrix& v = svd.v;
  const Index n = v.rows();
  const Index state = cfg.forcing ? r - 1 : r;

  if (cfg.derivative == DerivativeScheme::forward) {
    const Matrix ab = havok_regression(v, cfg.forcing);
    const Matrix current = v.topRows(n - 1).transpose();
    const Matrix next = v.bottomRows(n - 1).leftCols(state).transpose();
    model.residual = (next - ab * current).norm();
    assign_from_discrete(model, ab, state, dt);
    model.t_first = window_centre(x, cfg.delays);
  } else {
    const Matrix current = v.middleRows(1, n - 2).transpose();
    const Matrix deriv =
        (v.bottomRows(n - 2).leftCols(state) - v.topRows(n - 2).leftCols(state)).transpose() /
        (2.0 * dt);
    const Matrix ab = deriv * pseudo_inverse(current);
    model.residual = (deriv - ab * current).norm();
    assign_from_continuous(model, ab, state, dt);
    model.t_first = window_centre(x, cfg.delays);
  }

  model.basis = to_basis(std::move(svd));
  model.config = cfg;
  model.spectrum = eigen_nonsymmetric(model.a_continuous);
  return model;
}

DelayModel fit_shavok(const TimeSeries& x, const FitConfig& cfg_in) {
  require(cfg_in.method == Method::shavok, ErrorKind::parameter,
          "fit_shavok: config method is not shavok");
  const FitConfig cfg = resolve(x, cfg_in);
  const Index r = cfg.rank;
  const Index state = cfg.forcing ? r - 1 : r;
  const double dt = cfg.dt;

  DelayModel model;
  HankelEmbedding emb = build_hankel(x, cfg.delays);
  if (cfg.centering) {
    const HankelEmbedding centered = center_hankel(emb);
    model.speed = estimate_speed(*centered.h0, dt);
    if (!cfg.center_per_half) emb = centered;
  }

  auto centre_half = [&](HankelEmbedding half) {
    if (cfg.centering && cfg.center_per_half) return center_hankel(half);
    return half;
  };

  if (cfg.derivative == DerivativeScheme::forward) {
    auto [first, second] = split_shift(emb);
    first = centre_half(std::move(first));
    second = centre_half(std::move(second));

    SvdTriple s1 = thin_svd(first.h, r);
    check_numerical_rank(s1.sigma, cfg.rank_tolerance, "fit_shavok (first half)");
    SvdTriple s2 = thin_svd(second.h, state);
    check_numerical_rank(s2.sigma, cfg.rank_tolerance, "fit_shavok (second half)");
    align_to(s1, s2);

    const Matrix ab = s2.v.transpose() * s1.v;  // state x r
    model.residual = (s2.v - s1.v * ab.transpose()).norm();
    assign_from_discrete(model, ab, state, dt);
    model.basis = to_basis(std::move(s1));
    model.shifted_basis = to_basis(std::move(s2));
  } else {
    const Index n = emb.columns();
    require(n >= 4, ErrorKind::parameter, "fit_shavok: central scheme needs 4 columns");
    auto take = [&](Index first_col) {
      HankelEmbedding half = emb;
      half.h = emb.h.middleCols(first_col, n - 2);
      half.t0 = emb.t0 + static_cast<double>(first_col) * dt;
      return centre_half(std::move(half));
    };
    const HankelEmbedding before = take(0), mid = take(1), after = take(2);

    SvdTriple sm = thin_svd(mid.h, r);
    check_numerical_rank(sm.sigma, cfg.rank_tolerance, "fit_shavok (middle window)");
    SvdTriple sb = thin_svd(before.h, state);
    check_numerical_rank(sb.sigma, cfg.rank_tolerance, "fit_shavok (leading window)");
    SvdTriple sa = thin_svd(after.h, state);
    check_numerical_rank(sa.sigma, cfg.rank_tolerance, "fit_shavok (trailing window)");
    align_to(sm, sb);
    align_to(sm, sa);

    const Matrix ab = (sa.v.transpose() * sm.v - sb.v.transpose() * sm.v) / (2.0 * dt);
    const Matrix deriv = (sa.v - sb.v) / (2.0 * dt);
    model.residual = (deriv - sm.v * ab.transpose()).norm();
    assign_from_continuous(model, ab, state, dt);
    model.basis = to_basis(std::move(sm));
    model.shifted_basis = to_basis(std::move(sa));
    model.t_first = window_centre(x, cfg.delays) + dt;
    model.config = cfg;
    model.spectrum = eigen_nonsymmetric(model.a_continuous);
    return model;
  }

  model.t_first = window_centre(x, cfg.delays);
  model.config = cfg;
  model.spectrum = eigen_nonsymmetric(model.a_continuous);
  return model;
}

DelayModel fit(const TimeSeries& x, const FitConfig& cfg) {
  return cfg.method == Method::havok ? fit_havok(x, cfg) : fit_shavok(x, cfg);
}

Spectrum model_spectrum(const DelayModel& model) {
  return eigen_nonsymmetric(model.a_continuous);
}

ComplexVector continuous_eigenvalues(const Matrix& a_discrete, double dt) {
  require(dt > 0.0, ErrorKind::parameter, "continuous_eigenvalues: dt must be positive");
  const Spectrum s = eigen_nonsymmetric(a_discrete);
  ComplexVector out(s.eigenvalues.size());
  for (Index k = 0; k < out.size(); ++k) {
    const std::complex<double> lambda = s.eigenvalues(k);
    require(std::abs(lambda) > 0.0, ErrorKind::numerical,
            "continuous_eigenvalues: discrete map has a zero eigenvalue");
    out(k) = std::log(lambda) / dt;
  }
  return out;
}

Matrix reconstruct(const DelayModel& model, const Vector& v0, Index steps,
                   std::optional<std::span<const double>> forcing) {
  const Index state = model.state_dim();
  require(v0.size() == state, ErrorKind::parameter,
          "reconstruct: initial state has dimension " + std::to_string(v0.size()) +
              ", model state dimension is " + std::to_string(state));
  require(steps >= 0, ErrorKind::parameter, "reconstruct: negative step count");
  if (model.has_forcing() && steps > 0) {
    require(forcing.has_value(), ErrorKind::parameter,
            "reconstruct: forced model needs a forcing series");
    require(static_cast<Index>(forcing->size()) >= steps - 1, ErrorKind::parameter,
            "reconstruct: forcing series has " + std::to_string(forcing->size()) +
                " values, need " + std::to_string(steps - 1));
  }

  Matrix out(state, steps);
  if (steps == 0) return out;
  out.col(0) = v0;
  for (Index k = 1; k < steps; ++k) {
    out.col(k) = model.a_discrete * out.col(k - 1);
    if (model.has_forcing()) {
      out.col(k) += *model.b_discrete * (*forcing)[static_cast<std::size_t>(k - 1)];
    }
  }
  return out;
}

TimeSeries forcing_signal(const DelayModel& model) {
  require(model.has_forcing(), ErrorKind::parameter,
          "forcing_signal: model was fitted without forcing");
  require(model.basis.v.size() > 0, ErrorKind::parameter,
          "forcing_signal: model carries no basis (loaded from file?)");
  const Matrix& v = model.basis.v;
  const Vector col = v.col(v.cols() - 1);
  return TimeSeries(model.t_first, model.config.dt, std::vector<double>(col.begin(), col.end()));
}

}  // namespace shavok
