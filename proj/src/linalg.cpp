#include "shavok/linalg.hpp"

#include "shavok/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace shavok {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parameter: return "parameter error";
    case ErrorKind::config: return "config error";
    case ErrorKind::data: return "data error";
    case ErrorKind::numerical: return "numerical error";
    case ErrorKind::degenerate: return "degenerate input";
    case ErrorKind::io: return "I/O error";
  }
  return "error";
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

namespace {

struct FullSvd {
  Matrix u;  // rows x k
  Vector sigma;
  Matrix v;  // cols x k
};

// Factor the long side with Householder QR, then run Jacobi SVD on the k x k
// triangular factor (k = min(rows, cols)). Only `keep` columns of the long-side
// singular vectors are formed.
FullSvd qr_svd(const Matrix& m, Index keep) {
  const bool wide = m.rows() < m.cols();
  const Matrix tall = wide ? Matrix(m.transpose()) : m;
  const Index k = tall.cols();

  Eigen::HouseholderQR<Matrix> qr(tall);
  const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Matrix> small(r, Eigen::ComputeFullU | Eigen::ComputeFullV);

  Matrix long_side = Matrix::Zero(tall.rows(), keep);
  long_side.topRows(k) = small.matrixU().leftCols(keep);
  long_side.applyOnTheLeft(qr.householderQ());

  FullSvd out;
  out.sigma = small.singularValues();
  if (wide) {
    out.u = small.matrixV().leftCols(keep);
    out.v = std::move(long_side);
  } else {
    out.u = std::move(long_side);
    out.v = small.matrixV().leftCols(keep);
  }
  return out;
}

}  // namespace

void orient_singular_pairs(Matrix& u, Matrix& v) {
  for (Index j = 0; j < u.cols(); ++j) {
    const auto col = u.col(j);
    const double norm = col.norm();
    double pivot = col(col.size() - 1);
    if (std::abs(pivot) <= 1e-8 * norm) {
      Index arg = 0;
      col.cwiseAbs().maxCoeff(&arg);
      pivot = col(arg);
    }
    if (pivot < 0.0) {
      u.col(j) *= -1.0;
      v.col(j) *= -1.0;
    }
  }
}

SvdTriple thin_svd(const Matrix& m, Index r) {
  const Index k = std::min(m.rows(), m.cols());
  require(r >= 1 && r <= k, ErrorKind::parameter,
          "thin_svd: rank " + std::to_string(r) + " outside [1, " + std::to_string(k) + "]");
  require(m.allFinite(), ErrorKind::data, "thin_svd: matrix has non-finite entries");

  FullSvd full = qr_svd(m, r);
  SvdTriple out;
  out.u = std::move(full.u);
  out.v = std::move(full.v);
  out.sigma = full.sigma.head(r);
  out.rank = r;
  orient_singular_pairs(out.u, out.v);
  return out;
}

Vector singular_values(const Matrix& m) {
  require(m.size() > 0, ErrorKind::parameter, "singular_values: empty matrix");
  require(m.allFinite(), ErrorKind::data, "singular_values: matrix has non-finite entries");
  const Matrix tall = m.rows() < m.cols() ? Matrix(m.transpose()) : m;
  Eigen::HouseholderQR<Matrix> qr(tall);
  const Matrix r = qr.matrixQR().topRows(tall.cols()).triangularView<Eigen::Upper>();
  return Eigen::JacobiSVD<Matrix>(r).singularValues();
}

Matrix pseudo_inverse(const Matrix& m, double rel_tol) {
  require(m.size() > 0, ErrorKind::parameter, "pseudo_inverse: empty matrix");
  require(rel_tol > 0.0 && rel_tol < 1.0, ErrorKind::parameter,
          "pseudo_inverse: rel_tol must lie in (0, 1)");
  require(m.allFinite(), ErrorKind::data, "pseudo_inverse: matrix has non-finite entries");

  const Index k = std::min(m.rows(), m.cols());
  const FullSvd svd = qr_svd(m, k);
  const double cutoff = rel_tol * svd.sigma(0);
  Vector inv = Vector::Zero(k);
  for (Index i = 0; i < k; ++i) {
    if (svd.sigma(i) > cutoff) inv(i) = 1.0 / svd.sigma(i);
  }
  return svd.v * inv.asDiagonal() * svd.u.transpose();
}

Spectrum eigen_nonsymmetric(const Matrix& m) {
  require(m.rows() == m.cols(), ErrorKind::parameter,
          "eigen_nonsymmetric: matrix is " + std::to_string(m.rows()) + "x" +
              std::to_string(m.cols()) + ", expected square");
  require(m.allFinite(), ErrorKind::data, "eigen_nonsymmetric: matrix has non-finite entries");

  Spectrum out;
  if (m.size() == 0) return out;

  Eigen::EigenSolver<Matrix> solver;
  solver.setMaxIterations(60);  // per eigenvalue, times the dimension
  solver.compute(m, true);
  require(solver.info() == Eigen::Success, ErrorKind::numerical,
          "eigen_nonsymmetric: QR iteration did not converge");

  const ComplexVector values = solver.eigenvalues();
  const ComplexMatrix vectors = solver.eigenvectors();
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (values(a).imag() != values(b).imag()) return values(a).imag() < values(b).imag();
    return values(a).real() < values(b).real();
  });

  out.eigenvalues.resize(values.size());
  out.eigenvectors.resize(vectors.rows(), vectors.cols());
  for (Index k = 0; k < values.size(); ++k) {
    out.eigenvalues(k) = values(order[static_cast<std::size_t>(k)]);
    out.eigenvectors.col(k) = vectors.col(order[static_cast<std::size_t>(k)]);
  }
  return out;
}

OrthonormalSet gram_schmidt(std::span<const Vector> vectors) {
  OrthonormalSet out;
  if (vectors.empty()) return out;
  const Index n = vectors.front().size();

  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const Vector& input = vectors[i];
    require(input.size() == n, ErrorKind::parameter,
            "gram_schmidt: vector " + std::to_string(i) + " has length " +
                std::to_string(input.size()) + ", expected " + std::to_string(n));
    const double input_norm = input.norm();
    if (!(input_norm > 0.0)) {
      throw DegenerateError(i, "gram_schmidt: vector " + std::to_string(i) + " is zero");
    }

    Vector w = input;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& e : out.vectors) w -= e.dot(w) * e;
    }
    const double residual = w.norm();
    if (residual < 1e-12 * input_norm) {
      out.dropped.push_back(i);
      continue;
    }
    out.vectors.push_back(w / residual);
  }
  return out;
}

}  // namespace shavok
