#include "oracles.hpp"

#include "shavok/error.hpp"
#include "shavok/linalg.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace shavok;

TEST_SUITE("linalg") {

TEST_CASE("thin_svd reconstructs a random matrix and matches a Jacobi oracle") {
  std::mt19937_64 rng(11);
  const Matrix m = oracle::random_matrix(rng, 30, 7);
  const SvdTriple s = thin_svd(m, 7);
  CHECK((s.u * s.sigma.asDiagonal() * s.v.transpose() - m).norm() <= 1e-12 * m.norm());
  CHECK((s.u.transpose() * s.u - Matrix::Identity(7, 7)).norm() < 1e-13);
  CHECK((s.v.transpose() * s.v - Matrix::Identity(7, 7)).norm() < 1e-13);

  const auto ref = oracle::one_sided_jacobi(m);
  for (Index k = 0; k < 7; ++k) {
    CHECK(s.sigma(k) == doctest::Approx(ref.s(k)).epsilon(1e-12));
    CHECK(std::abs(s.u.col(k).dot(ref.u.col(k))) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("thin_svd on a wide matrix keeps the leading triples") {
  std::mt19937_64 rng(12);
  const Matrix m = oracle::random_matrix(rng, 9, 200);
  const SvdTriple s = thin_svd(m, 4);
  CHECK(s.u.rows() == 9);
  CHECK(s.v.rows() == 200);
  CHECK(s.rank == 4);
  const Vector all = singular_values(m);
  for (Index k = 0; k < 4; ++k) CHECK(s.sigma(k) == doctest::Approx(all(k)).epsilon(1e-12));
  for (Index k = 0; k + 1 < all.size(); ++k) CHECK(all(k) >= all(k + 1));
}

TEST_CASE("thin_svd sign convention makes the last entry of each u positive") {
  std::mt19937_64 rng(13);
  const SvdTriple s = thin_svd(oracle::random_matrix(rng, 15, 40), 5);
  for (Index k = 0; k < 5; ++k) CHECK(s.u(14, k) > 0.0);
}

TEST_CASE("thin_svd rejects bad rank and non-finite input") {
  Matrix m = Matrix::Ones(4, 6);
  CHECK_THROWS_AS(thin_svd(m, 0), Error);
  CHECK_THROWS_AS(thin_svd(m, 5), Error);
  m(1, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    thin_svd(m, 2);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::data);
  }
}

TEST_CASE("singular values of a diagonal matrix") {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 2.0, -5.0, 1.0;
  const Vector s = singular_values(d);
  CHECK(s(0) == doctest::Approx(5.0));
  CHECK(s(1) == doctest::Approx(2.0));
  CHECK(s(2) == doctest::Approx(1.0));
}

TEST_CASE("pseudo_inverse satisfies the Penrose conditions") {
  std::mt19937_64 rng(14);
  const Matrix a = oracle::random_matrix(rng, 8, 3) * oracle::random_matrix(rng, 3, 6);  // rank 3
  const Matrix p = pseudo_inverse(a);
  CHECK((a * p * a - a).norm() < 1e-10 * a.norm());
  CHECK((p * a * p - p).norm() < 1e-10 * p.norm());
  CHECK(((a * p).transpose() - a * p).norm() < 1e-10);
  CHECK(((p * a).transpose() - p * a).norm() < 1e-10);
}

TEST_CASE("pseudo_inverse of a full-column-rank matrix is the left inverse") {
  std::mt19937_64 rng(15);
  const Matrix a = oracle::random_matrix(rng, 10, 4);
  CHECK((pseudo_inverse(a) * a - Matrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("eigen_nonsymmetric on a rotation generator") {
  Matrix a(2, 2);
  a << 0, 1, -1, 0;
  const Spectrum s = eigen_nonsymmetric(a);
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK(s.eigenvalues(0).imag() == doctest::Approx(-1.0));
  CHECK(s.eigenvalues(1).imag() == doctest::Approx(1.0));
  for (Index k = 0; k < 2; ++k) {
    const Eigen::VectorXcd lhs = a.cast<std::complex<double>>() * s.eigenvectors.col(k);
    CHECK((lhs - s.eigenvalues(k) * s.eigenvectors.col(k)).norm() < 1e-12);
  }
}

TEST_CASE("eigen_nonsymmetric residuals on random matrices and ordering") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = oracle::random_matrix(rng, 6, 6);
    const Spectrum s = eigen_nonsymmetric(a);
    for (Index k = 0; k < 6; ++k) {
      const Eigen::VectorXcd v = s.eigenvectors.col(k);
      CHECK((a.cast<std::complex<double>>() * v - s.eigenvalues(k) * v).norm() <
            1e-10 * a.norm() * v.norm());
      if (k > 0) CHECK(s.eigenvalues(k - 1).imag() <= s.eigenvalues(k).imag() + 1e-14);
    }
    std::complex<double> trace = 0;
    for (Index k = 0; k < 6; ++k) trace += s.eigenvalues(k);
    CHECK(trace.real() == doctest::Approx(a.trace()).epsilon(1e-10));
  }
}

TEST_CASE("eigen_nonsymmetric rejects non-square input") {
  CHECK_THROWS_AS(eigen_nonsymmetric(Matrix::Zero(2, 3)), Error);
}

TEST_CASE("gram_schmidt orthonormalizes and reports dependent vectors") {
  std::vector<Vector> v{Vector::Unit(3, 0) * 2.0, Vector::Unit(3, 0) + Vector::Unit(3, 1),
                        Vector::Unit(3, 0) * 5.0 - Vector::Unit(3, 1), Vector::Unit(3, 2)};
  const OrthonormalSet s = gram_schmidt(v);
  REQUIRE(s.vectors.size() == 3);
  REQUIRE(s.dropped.size() == 1);
  CHECK(s.dropped[0] == 2);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(s.vectors[i].dot(s.vectors[j]) == doctest::Approx(i == j ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("gram_schmidt zero vector names its index") {
  std::vector<Vector> v{Vector::Unit(2, 0), Vector::Zero(2)};
  try {
    gram_schmidt(v);
    FAIL("expected throw");
  } catch (const DegenerateError& e) {
    CHECK(e.index() == 1);
  }
}

TEST_CASE("property: gram_schmidt output spans the input on random sets") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = oracle::random_matrix(rng, 10, 5);
    std::vector<Vector> v;
    for (Index j = 0; j < 5; ++j) v.push_back(m.col(j));
    const OrthonormalSet s = gram_schmidt(v);
    REQUIRE(s.vectors.size() == 5);
    Matrix q(10, 5);
    for (Index j = 0; j < 5; ++j) q.col(j) = s.vectors[static_cast<std::size_t>(j)];
    CHECK((q.transpose() * q - Matrix::Identity(5, 5)).norm() < 1e-13);
    CHECK((q * (q.transpose() * m) - m).norm() < 1e-12 * m.norm());
  }
}

TEST_CASE("orient_singular_pairs falls back to the largest entry when the last is negligible") {
  Matrix u(3, 1), v(2, 1);
  u << -0.8, 0.6, 0.0;
  v << 1.0, 2.0;
  orient_singular_pairs(u, v);
  CHECK(u(0, 0) == doctest::Approx(0.8));
  CHECK(v(0, 0) == doctest::Approx(-1.0));
}

TEST_CASE("thin_svd hand cases") {
  const SvdTriple id = thin_svd(Matrix::Identity(3, 3), 3);
  CHECK((id.sigma - Vector::Ones(3)).norm() < 1e-14);
  CHECK((id.u.cwiseAbs() * id.v.cwiseAbs().transpose() - Matrix::Identity(3, 3)).norm() < 1e-14);

  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 3, 2, 1;
  const SvdTriple two = thin_svd(d, 2);
  CHECK(two.sigma(0) == doctest::Approx(3.0));
  CHECK(two.sigma(1) == doctest::Approx(2.0));

  // Gram matrix [[5,10],[10,20]] has eigenvalues 25 and 0.
  Matrix r1(2, 2);
  r1 << 1, 2, 2, 4;
  const SvdTriple s = thin_svd(r1, 2);
  CHECK(s.sigma(0) == doctest::Approx(5.0));
  CHECK(std::abs(s.sigma(1)) < 1e-12);
}

TEST_CASE("property: rank-r truncation error equals the next singular value") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix x = oracle::random_matrix(rng, 20, 30);
    const auto full = oracle::one_sided_jacobi(x.transpose());  // independent spectrum
    for (Index r : {1, 5, 12}) {
      const SvdTriple t = thin_svd(x, r);
      const Matrix xr = t.u * t.sigma.asDiagonal() * t.v.transpose();
      const double lhs = singular_values(x - xr)(0) / full.s(0);
      CHECK(std::abs(lhs - full.s(r) / full.s(0)) < 1e-8);
    }
  }
}

TEST_CASE("pseudo_inverse hand cases") {
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 2, 4;
  Matrix expect = Matrix::Zero(2, 2);
  expect.diagonal() << 0.5, 0.25;
  CHECK((pseudo_inverse(d) - expect).norm() < 1e-15);

  Matrix r1(2, 2);
  r1 << 1, 2, 2, 4;
  CHECK((pseudo_inverse(r1) - r1 / 25.0).norm() < 1e-12);
  CHECK_THROWS_AS(pseudo_inverse(Matrix(0, 0)), Error);
  CHECK_THROWS_AS(pseudo_inverse(r1, 1.5), Error);
}

TEST_CASE("property: pseudo_inverse of orthonormal columns is the transpose") {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix q = oracle::random_orthonormal(rng, 12, 1 + trial % 6);
    CHECK((pseudo_inverse(q) - q.transpose()).norm() < 1e-10);
  }
}

TEST_CASE("eigen_nonsymmetric hand cases") {
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 5, 2;
  const Spectrum s = eigen_nonsymmetric(d);
  CHECK(s.eigenvalues(0).real() == doctest::Approx(2.0));
  CHECK(s.eigenvalues(1).real() == doctest::Approx(5.0));

  // Companion matrix of z^2 - z - 1; roots from the quadratic formula.
  Matrix c(2, 2);
  c << 1, 1, 1, 0;
  const Spectrum g = eigen_nonsymmetric(c);
  const double phi = (1 + std::sqrt(5.0)) / 2;
  std::vector<double> got{g.eigenvalues(0).real(), g.eigenvalues(1).real()};
  std::sort(got.begin(), got.end());
  CHECK(got[0] == doctest::Approx(1 - phi).epsilon(1e-14));
  CHECK(got[1] == doctest::Approx(phi).epsilon(1e-14));
  CHECK(g.eigenvalues.imag().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("property: skew-symmetric matrices have imaginary spectra") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = oracle::random_matrix(rng, 7, 7);
    const Matrix skew = a - a.transpose();
    const Spectrum s = eigen_nonsymmetric(skew);
    CHECK(s.eigenvalues.real().cwiseAbs().maxCoeff() <= 1e-8 * skew.norm());
  }
}

TEST_CASE("gram_schmidt hand cases") {
  auto v2 = [](double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
  };
  const std::vector<Vector> diag{v2(1, 0), v2(0, 2)};
  const OrthonormalSet a = gram_schmidt(diag);
  REQUIRE(a.vectors.size() == 2);
  CHECK((a.vectors[1] - v2(0, 1)).norm() < 1e-15);

  const std::vector<Vector> skewed{v2(1, 1), v2(1, 0)};
  const OrthonormalSet b = gram_schmidt(skewed);
  REQUIRE(b.vectors.size() == 2);
  CHECK((b.vectors[0] - v2(1, 1) / std::sqrt(2.0)).norm() < 1e-15);
  CHECK((b.vectors[1] - v2(1, -1) / std::sqrt(2.0)).norm() < 1e-15);

  const std::vector<Vector> dep{v2(1, 0), v2(2, 0)};
  const OrthonormalSet c = gram_schmidt(dep);
  CHECK(c.vectors.size() == 1);
  REQUIRE(c.dropped.size() == 1);
  CHECK(c.dropped[0] == 1);
}

}
