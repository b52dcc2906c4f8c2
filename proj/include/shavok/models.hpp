#pragma once

#include "shavok/embedding.hpp"
#include "shavok/linalg.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace shavok {

enum class Method { havok, shavok };
enum class DerivativeScheme { forward, central };

std::string_view to_string(Method m) noexcept;
std::string_view to_string(DerivativeScheme d) noexcept;
Method parse_method(std::string_view s);
DerivativeScheme parse_derivative(std::string_view s);

struct FitConfig {
  Index delays = 41;
  Index rank = 4;
  double dt = 0.0;  // 0 inherits the series step; otherwise must match it
  bool centering = true;
  bool forcing = true;
  Method method = Method::havok;
  DerivativeScheme derivative = DerivativeScheme::forward;
  // sHAVOK only: center each shifted half on its own central row instead of
  // centering the full Hankel matrix once before splitting.
  bool center_per_half = false;
  // A fit whose sigma_r falls below rank_tolerance * sigma_1 is rejected.
  double rank_tolerance = 1e-12;
};

struct ReducedBasis {
  Matrix u;      // delays x rank
  Vector sigma;  // rank
  Matrix v;      // snapshots x rank; row k is the delay coordinate vector at snapshot k
};

/// Linear delay-coordinate model  v_{k+1} = a_discrete v_k (+ b_discrete v_r,k),
/// with continuous counterpart  dv/dt = a_continuous v (+ b_continuous v_r).
struct DelayModel {
  Matrix a_discrete;
  Matrix a_continuous;
  std::optional<Vector> b_discrete;
  std::optional<Vector> b_continuous;
  ReducedBasis basis;                         // basis the state is read from
  std::optional<ReducedBasis> shifted_basis;  // sHAVOK: basis of the later shifted half
  Spectrum spectrum;                          // of a_continuous
  FitConfig config;                           // resolved, dt filled in
  std::optional<double> speed;                // |h0'| estimate, centered fits only
  double residual = 0.0;                      // Frobenius norm of the regression misfit
  double t_first = 0.0;                       // time of basis row 0 (window centre)

  Index state_dim() const noexcept { return a_continuous.rows(); }
  bool has_forcing() const noexcept { return b_discrete.has_value(); }
};

DelayModel fit_havok(const TimeSeries& x, const FitConfig& cfg);
DelayModel fit_shavok(const TimeSeries& x, const FitConfig& cfg);
/// Dispatch on cfg.method.
DelayModel fit(const TimeSeries& x, const FitConfig& cfg);

/// Least-squares step of HAVOK on a given trajectory (rows are snapshots):
/// returns [A_hat | B_hat] minimizing |next - [A_hat | B_hat] current|_F.
/// With forcing the target keeps only the first r-1 coordinates.
Matrix havok_regression(const Matrix& trajectory, bool forcing);

/// Eigenvalues of a_continuous (same ordering as eigen_nonsymmetric).
Spectrum model_spectrum(const DelayModel& model);

/// omega = log(lambda) / dt for the eigenvalues of a discrete map, principal branch.
ComplexVector continuous_eigenvalues(const Matrix& a_discrete, double dt);

/// Roll the discrete model forward. Column k holds v_k; column 0 is v0.
/// `forcing` must hold at least steps - 1 values when the model is forced.
Matrix reconstruct(const DelayModel& model, const Vector& v0, Index steps,
                   std::optional<std::span<const double>> forcing = std::nullopt);

/// The r-th delay coordinate of the fit basis, sampled at the model step.
TimeSeries forcing_signal(const DelayModel& model);

/// |h0'| from second-order central differences of h0, interior points only.
double estimate_speed(const Vector& h0, double dt);

}  // namespace shavok
