// Reference implementations used only by the tests. Each one takes a
// different route from the library code it checks.
#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Mean matched distance by trying every permutation (n <= 8).
inline double brute_force_matching(const std::vector<std::complex<double>>& a,
                                   const std::vector<std::complex<double>>& b) {
  std::vector<int> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[perm[i]]);
    best = std::min(best, sum);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best / static_cast<double>(a.size());
}

// min_X |Y - X Z|_F through the normal equations.
inline Matrix least_squares_normal(const Matrix& y, const Matrix& z) {
  const Matrix zzt = z * z.transpose();
  return zzt.fullPivLu().solve(z * y.transpose()).transpose();
}

// Gram-Schmidt on n, n^2, ..., n^k over n = -p..p, columns normalized, last entry positive.
inline Matrix gram_schmidt_polynomials(int m, int k) {
  const int p = (m - 1) / 2;
  Matrix q(m, k);
  for (int d = 1; d <= k; ++d) {
    Vector v(m);
    for (int i = 0; i < m; ++i) v(i) = std::pow(static_cast<double>(i - p), d);
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < d - 1; ++j) v -= q.col(j).dot(v) * q.col(j);
    }
    v /= v.norm();
    if (v(m - 1) < 0) v = -v;
    q.col(d - 1) = v;
  }
  return q;
}

struct Svd {
  Matrix u;
  Vector s;
  Matrix v;
};

// One-sided Jacobi SVD on the columns of a (rows >= cols), sorted descending.
inline Svd one_sided_jacobi(Matrix a) {
  const Eigen::Index n = a.cols();
  Matrix v = Matrix::Identity(n, n);
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n - 1; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        const double alpha = a.col(i).squaredNorm();
        const double beta = a.col(j).squaredNorm();
        const double gamma = a.col(i).dot(a.col(j));
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta)) continue;
        off = std::max(off, std::abs(gamma) / std::sqrt(alpha * beta));
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        const Vector ai = a.col(i), aj = a.col(j);
        a.col(i) = c * ai - s * aj;
        a.col(j) = s * ai + c * aj;
        const Vector vi = v.col(i), vj = v.col(j);
        v.col(i) = c * vi - s * vj;
        v.col(j) = s * vi + c * vj;
      }
    }
    if (off < 1e-15) break;
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Vector norms = a.colwise().norm();
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return norms(x) > norms(y); });
  Svd out{Matrix(a.rows(), n), Vector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index j = order[static_cast<std::size_t>(k)];
    out.s(k) = norms(j);
    out.u.col(k) = norms(j) > 0 ? Vector(a.col(j) / norms(j)) : Vector::Zero(a.rows());
    out.v.col(k) = v.col(j);
  }
  return out;
}

// exp(A) by scaling and squaring of a truncated Taylor series.
inline Matrix expm_taylor(const Matrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm + 1e-300))) + 4);
  const Matrix scaled = a / std::pow(2.0, squarings);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

// Random orthonormal k columns in R^n via QR of a Gaussian matrix.
inline Matrix random_orthonormal(std::mt19937_64& rng, int n, int k) {
  std::normal_distribution<double> g;
  Matrix m(n, k);
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) m(i, j) = g(rng);
  }
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(n, k);
}

inline Matrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = g(rng);
  }
  return m;
}

// det(D^T D) through LU on the Gram matrix.
inline double gram_det(const std::vector<Vector>& d) {
  Matrix m(d.front().size(), static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = d[i];
  return (m.transpose() * m).determinant();
}

// Cubic through four points evaluated at t (Lagrange), for spline checks.
inline double two_tone(double t) { return std::sin(t) + std::sin(2.0 * t); }

}  // namespace oracle
