#pragma once

#include "shavok/embedding.hpp"
#include "shavok/linalg.hpp"

#include <array>
#include <span>
#include <vector>

namespace shavok {

/// Moving orthonormal frame e_1..e_k of a curve at one parameter value.
struct FrenetApparatus {
  std::vector<Vector> frame;
  std::vector<double> curvatures;  // kappa_1..kappa_{k-1}; filled when known
  double speed = 0.0;              // |gamma'|
  Matrix k_matrix;                 // k x k; zero until curvatures are known
  std::vector<std::size_t> dropped;  // derivative orders (0-based) removed as dependent
};

/// Frame from the derivative stack gamma', gamma'', ... by Gram-Schmidt.
/// A zero first derivative throws DegenerateError(0); later dependent
/// derivatives shrink the frame and are listed in `dropped`.
FrenetApparatus frenet_frame(std::span<const Vector> derivatives);

struct CurvatureMatrixEstimate {
  Matrix k;                   // skew part (K - K^T) / 2
  Matrix raw;                 // forward-difference estimate before symmetrization
  double symmetric_residual;  // |(raw + raw^T) / 2|_F
};

/// K = (1/|gamma'|) (dQ/dt) Q^T from forward differences of consecutive frames,
/// averaged over all consecutive pairs, then skew-symmetrized.
CurvatureMatrixEstimate curvature_matrix_from_frame(std::span<const FrenetApparatus> frames,
                                                    double dt);

/// Curvatures kappa_1..kappa_3 from Gram determinants of the first four derivatives:
///   kappa_i = sqrt(det G_{i+1} det G_{i-1}) / (det G_i |d1|),  G_0 = 1, G_1 = |d1|^2,
/// where G_i is the Gram matrix of d1..di. Determinants come from Cholesky
/// factors; a pivot below 1e-12 of the largest diagonal entry marks G_i
/// singular and throws DegenerateError whose index is the first undefined kappa (1-based).
std::array<double, 3> analytic_curvatures_gram(const Vector& d1, const Vector& d2,
                                               const Vector& d3, const Vector& d4);

/// Small-window limit kappa_i = sqrt(a_i) sigma_{i+1} / (sigma_1 sigma_i), with
/// a_j = ((j+1) / (j+1 + (-1)^(j+1)))^2 (4 (j+1)^2 - 1) / 3.
std::vector<double> curvatures_from_singular_values(std::span<const double> sigma);

/// Coefficient a_j used by curvatures_from_singular_values (j >= 1).
double singular_value_curvature_coefficient(int j);

/// Sampled orthonormal polynomials on n = -p..p, p = (m - 1) / 2.
struct PolynomialBasis {
  std::vector<int> degrees;  // 1..k
  Matrix vectors;            // m x k
  Index half_width = 0;
};

/// Closed-form discrete polynomials p_1..p_k (k <= 5).
PolynomialBasis discrete_orthopoly(Index m, Index k);

/// p_1..p_k for any k: closed forms up to degree 5, Gram-Schmidt on n^i beyond
/// (numerically rather than symbolically orthogonal).
PolynomialBasis orthopoly_basis(Index m, Index k);

struct ModelCurvatures {
  Matrix k;                          // a_continuous / speed
  std::vector<double> superdiagonal;  // curvature estimates
};

ModelCurvatures curvatures_from_model(const Matrix& a_continuous, double speed);

/// Derivatives h0', h0'', ... of the central row of an uncentered Hankel
/// embedding along the delay axis, from second-order central differences.
/// Supports orders 1..4 (needs at least 5 delays for orders 3 and 4).
std::vector<Vector> central_row_derivatives(const HankelEmbedding& h, int orders);

}  // namespace shavok
