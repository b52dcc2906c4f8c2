#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace shavok {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using Index = Eigen::Index;

/// Rank-r factor of a thin SVD, m ~= u * diag(sigma) * v^T.
///
/// Sign convention: each pair (u_j, v_j) is oriented so that the last entry
/// of u_j is positive. When that entry is negligible (below 1e-8 of the
/// column norm) the entry of largest magnitude is made positive instead.
struct SvdTriple {
  Matrix u;      // rows x rank, orthonormal columns
  Vector sigma;  // nonincreasing
  Matrix v;      // cols x rank, orthonormal columns
  Index rank = 0;
};

/// Eigenpairs of a real square matrix, ordered by imaginary part, then real part.
struct Spectrum {
  ComplexVector eigenvalues;
  ComplexMatrix eigenvectors;  // column k pairs with eigenvalues[k]
};

struct OrthonormalSet {
  std::vector<Vector> vectors;
  std::vector<std::size_t> dropped;  // input positions removed as linearly dependent
};

/// Leading r singular triples. Uses a Householder QR of the long side followed
/// by a Jacobi SVD of the small triangular factor, so small singular values
/// keep full relative accuracy.
SvdTriple thin_svd(const Matrix& m, Index r);

/// All min(rows, cols) singular values, nonincreasing.
Vector singular_values(const Matrix& m);

/// Moore-Penrose pseudoinverse; singular values at or below rel_tol * sigma_1
/// are treated as zero.
Matrix pseudo_inverse(const Matrix& m, double rel_tol = 1e-12);

Spectrum eigen_nonsymmetric(const Matrix& m);

/// Modified Gram-Schmidt with one reorthogonalization pass. Vectors whose
/// residual falls below 1e-12 of their own norm are dropped and reported.
/// Throws DegenerateError naming the index of an all-zero input vector.
OrthonormalSet gram_schmidt(std::span<const Vector> vectors);

/// Flip signs of singular pairs according to the SvdTriple convention.
void orient_singular_pairs(Matrix& u, Matrix& v);

bool all_finite(const Matrix& m);

}  // namespace shavok
