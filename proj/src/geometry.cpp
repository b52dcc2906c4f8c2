#include "shavok/geometry.hpp"

#include "shavok/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace shavok {

FrenetApparatus frenet_frame(std::span<const Vector> derivatives) {
  require(!derivatives.empty(), ErrorKind::parameter, "frenet_frame: no derivatives given");
  const double speed = derivatives.front().norm();
  if (!(speed > 0.0)) throw DegenerateError(0, "frenet_frame: first derivative is zero");

  FrenetApparatus out;
  out.speed = speed;

  // Zero higher derivatives are dependent on anything; report them as dropped.
  std::vector<Vector> nonzero;
  std::vector<std::size_t> origin;
  for (std::size_t i = 0; i < derivatives.size(); ++i) {
    if (i > 0 && derivatives[i].size() == derivatives[0].size() && derivatives[i].norm() == 0.0) {
      out.dropped.push_back(i);
      continue;
    }
    nonzero.push_back(derivatives[i]);
    origin.push_back(i);
  }
  OrthonormalSet set = gram_schmidt(nonzero);
  for (std::size_t d : set.dropped) out.dropped.push_back(origin[d]);
  std::sort(out.dropped.begin(), out.dropped.end());

  out.frame = std::move(set.vectors);
  const auto k = static_cast<Index>(out.frame.size());
  out.k_matrix = Matrix::Zero(k, k);
  return out;
}

CurvatureMatrixEstimate curvature_matrix_from_frame(std::span<const FrenetApparatus> frames,
                                                    double dt) {
  require(frames.size() >= 2, ErrorKind::parameter,
          "curvature_matrix_from_frame: need at least 2 frame samples");
  require(dt > 0.0, ErrorKind::parameter, "curvature_matrix_from_frame: dt must be positive");
  const std::size_t k = frames.front().frame.size();
  require(k > 0, ErrorKind::parameter, "curvature_matrix_from_frame: empty frame");
  const Index dim = frames.front().frame.front().size();

  auto stack = [&](const FrenetApparatus& f, std::size_t idx) {
    require(f.frame.size() == k, ErrorKind::parameter,
            "curvature_matrix_from_frame: frame " + std::to_string(idx) + " has " +
                std::to_string(f.frame.size()) + " vectors, expected " + std::to_string(k));
    Matrix q(static_cast<Index>(k), dim);
    for (std::size_t i = 0; i < k; ++i) {
      require(f.frame[i].size() == dim, ErrorKind::parameter,
              "curvature_matrix_from_frame: inconsistent vector length in frame " +
                  std::to_string(idx));
      q.row(static_cast<Index>(i)) = f.frame[i].transpose();
    }
    return q;
  };

  Matrix raw = Matrix::Zero(static_cast<Index>(k), static_cast<Index>(k));
  Matrix q_prev = stack(frames[0], 0);
  for (std::size_t s = 1; s < frames.size(); ++s) {
    const Matrix q_next = stack(frames[s], s);
    const double speed = frames[s - 1].speed;
    require(speed > 0.0, ErrorKind::parameter,
            "curvature_matrix_from_frame: frame " + std::to_string(s - 1) + " has zero speed");
    raw += (q_next - q_prev) * q_prev.transpose() / (dt * speed);
    q_prev = q_next;
  }
  raw /= static_cast<double>(frames.size() - 1);

  CurvatureMatrixEstimate out;
  out.raw = raw;
  out.k = 0.5 * (raw - raw.transpose());
  out.symmetric_residual = (0.5 * (raw + raw.transpose())).norm();
  return out;
}

std::array<double, 3> analytic_curvatures_gram(const Vector& d1, const Vector& d2,
                                               const Vector& d3, const Vector& d4) {
  const Index n = d1.size();
  require(d2.size() == n && d3.size() == n && d4.size() == n, ErrorKind::parameter,
          "analytic_curvatures_gram: derivative vectors differ in length");
  if (!(d1.norm() > 0.0)) {
    throw DegenerateError(1, "analytic_curvatures_gram: first derivative is zero, kappa1 undefined");
  }

  Matrix d(n, 4);
  d << d1, d2, d3, d4;
  const Matrix g = d.transpose() * d;

  // Cholesky by hand so the leading minors det(G_1..G_4) come out of the pivots.
  Eigen::Matrix4d l = Eigen::Matrix4d::Zero();
  std::array<double, 5> det{1.0, 0.0, 0.0, 0.0, 0.0};
  double largest_diagonal = 0.0;
  for (int j = 0; j < 4; ++j) {
    largest_diagonal = std::max(largest_diagonal, g(j, j));
    double pivot = g(j, j);
    for (int c = 0; c < j; ++c) pivot -= l(j, c) * l(j, c);
    if (!(pivot >= 1e-12 * largest_diagonal)) {
      // G_{j+1} singular: kappa_j (1-based) has a vanishing or undefined ratio.
      throw DegenerateError(static_cast<std::size_t>(j),
                            "analytic_curvatures_gram: Gram matrix G" + std::to_string(j + 1) +
                                " is singular, kappa" + std::to_string(j) + " is undefined");
    }
    l(j, j) = std::sqrt(pivot);
    for (int i = j + 1; i < 4; ++i) {
      double s = g(i, j);
      for (int c = 0; c < j; ++c) s -= l(i, c) * l(j, c);
      l(i, j) = s / l(j, j);
    }
    det[static_cast<std::size_t>(j + 1)] = det[static_cast<std::size_t>(j)] * pivot;
  }

  const double speed = std::sqrt(det[1]);
  std::array<double, 3> kappa{};
  for (std::size_t i = 1; i <= 3; ++i) {
    kappa[i - 1] = std::sqrt(det[i + 1] * det[i - 1]) / (det[i] * speed);
  }
  return kappa;
}

double singular_value_curvature_coefficient(int j) {
  require(j >= 1, ErrorKind::parameter, "curvature coefficient index must be >= 1");
  const double i = j + 1;
  const double sign = (j + 1) % 2 == 0 ? 1.0 : -1.0;
  const double ratio = i / (i + sign);
  return ratio * ratio * (4.0 * i * i - 1.0) / 3.0;
}

std::vector<double> curvatures_from_singular_values(std::span<const double> sigma) {
  require(sigma.size() >= 2, ErrorKind::parameter,
          "curvatures_from_singular_values: need at least 2 singular values");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    require(sigma[i] > 0.0, ErrorKind::parameter,
            "curvatures_from_singular_values: sigma_" + std::to_string(i + 1) +
                " is not positive");
    if (i > 0) {
      require(sigma[i] <= sigma[i - 1], ErrorKind::parameter,
              "curvatures_from_singular_values: singular values must be nonincreasing");
    }
  }
  std::vector<double> kappa(sigma.size() - 1);
  for (std::size_t i = 0; i + 1 < sigma.size(); ++i) {
    const double a = singular_value_curvature_coefficient(static_cast<int>(i + 1));
    kappa[i] = std::sqrt(a) * sigma[i + 1] / (sigma[0] * sigma[i]);
  }
  return kappa;
}

namespace {

// p_1..p_5 on the integer grid -p..p with the closed-form normalizations.
double closed_form_poly(int degree, double n, double p) {
  const double q = 3 * p * p + 3 * p - 1;
  const double w = 3 * p * p * p * p + 6 * p * p * p - 3 * p + 1;
  switch (degree) {
    case 1: {
      const double c = std::sqrt(p * (2 * p + 1) * (p + 1) / 3);
      return n / c;
    }
    case 2: {
      const double c = std::sqrt(p * (2 * p + 1) * (p + 1) * q / 15);
      return n * n / c;
    }
    case 3: {
      const double c =
          std::sqrt(p * (2 * p - 1) * (2 * p + 1) * (2 * p + 3) * (p - 1) * (p + 1) * (p + 2) / 175);
      return (n * n * n - n * q / 5) / c;
    }
    case 4: {
      const double c = std::sqrt(p * (2 * p - 1) * (2 * p + 1) * (2 * p + 3) * (p - 1) * (p + 1) *
                                 (p + 2) *
                                 (15 * p * p * p * p + 30 * p * p * p - 35 * p * p - 50 * p + 12) /
                                 (2205 * q));
      return (n * n * n * n - 5 * n * n * w / (7 * q)) / c;
    }
    case 5: {
      const double c = std::sqrt(4 * p * (2 * p - 1) * (2 * p + 1) * (2 * p - 3) * (2 * p + 3) *
                                 (2 * p + 5) * (p - 1) * (p + 1) * (p - 2) * (p + 2) * (p + 3) /
                                 43659);
      const double n3 = n * n * n;
      return (5 * (n * q / 5 - n3) * (2 * p * p + 2 * p - 3) / 9 - n * w / 7 + n3 * n * n) / c;
    }
    default:
      fail(ErrorKind::parameter, "closed_form_poly: unsupported degree");
  }
}

void check_grid(Index m, Index k, const char* what) {
  require(m >= 3 && m % 2 == 1, ErrorKind::parameter,
          std::string(what) + ": m must be odd and at least 3, got " + std::to_string(m));
  require(k >= 1, ErrorKind::parameter, std::string(what) + ": k must be at least 1");
  require((m - 1) / 2 >= k, ErrorKind::parameter,
          std::string(what) + ": half width p = " + std::to_string((m - 1) / 2) +
              " is smaller than k = " + std::to_string(k));
}

}  // namespace

PolynomialBasis discrete_orthopoly(Index m, Index k) {
  require(k <= 5, ErrorKind::parameter,
          "discrete_orthopoly: degree " + std::to_string(k) +
              " unsupported, closed forms exist up to degree 5");
  check_grid(m, k, "discrete_orthopoly");
  const Index p = (m - 1) / 2;

  PolynomialBasis out;
  out.half_width = p;
  out.vectors.resize(m, k);
  for (Index d = 1; d <= k; ++d) {
    out.degrees.push_back(static_cast<int>(d));
    for (Index i = 0; i < m; ++i) {
      out.vectors(i, d - 1) = closed_form_poly(static_cast<int>(d), static_cast<double>(i - p),
                                               static_cast<double>(p));
    }
  }
  return out;
}

PolynomialBasis orthopoly_basis(Index m, Index k) {
  check_grid(m, k, "orthopoly_basis");
  PolynomialBasis out = discrete_orthopoly(m, std::min<Index>(k, 5));
  if (k <= 5) return out;

  const Index p = (m - 1) / 2;
  out.vectors.conservativeResize(m, k);
  for (Index d = 6; d <= k; ++d) {
    Vector w(m);
    for (Index i = 0; i < m; ++i) w(i) = std::pow(static_cast<double>(i - p), static_cast<double>(d));
    for (int pass = 0; pass < 2; ++pass) {
      for (Index j = 0; j < d - 1; ++j) w -= out.vectors.col(j).dot(w) * out.vectors.col(j);
    }
    out.vectors.col(d - 1) = w / w.norm();
    out.degrees.push_back(static_cast<int>(d));
  }
  return out;
}

ModelCurvatures curvatures_from_model(const Matrix& a_continuous, double speed) {
  require(speed > 0.0, ErrorKind::parameter, "curvatures_from_model: speed must be positive");
  require(a_continuous.rows() == a_continuous.cols(), ErrorKind::parameter,
          "curvatures_from_model: dynamics matrix must be square");
  ModelCurvatures out;
  out.k = a_continuous / speed;
  for (Index i = 0; i + 1 < out.k.rows(); ++i) out.superdiagonal.push_back(out.k(i, i + 1));
  return out;
}

std::vector<Vector> central_row_derivatives(const HankelEmbedding& h, int orders) {
  require(orders >= 1 && orders <= 4, ErrorKind::parameter,
          "central_row_derivatives: orders must be in 1..4");
  require(h.delays % 2 == 1, ErrorKind::parameter,
          "central_row_derivatives: needs an odd delay count");
  require(h.delays >= (orders <= 2 ? 3 : 5), ErrorKind::parameter,
          "central_row_derivatives: too few delays for the requested order");
  const Index c = h.central_row();
  const double dt = h.dt;
  auto row = [&](Index offset) -> Vector { return h.h.row(c + offset).transpose(); };

  std::vector<Vector> out;
  out.push_back((row(1) - row(-1)) / (2 * dt));
  if (orders >= 2) out.push_back((row(1) - 2 * row(0) + row(-1)) / (dt * dt));
  if (orders >= 3) {
    out.push_back((row(2) - 2 * row(1) + 2 * row(-1) - row(-2)) / (2 * dt * dt * dt));
  }
  if (orders >= 4) {
    out.push_back((row(2) - 4 * row(1) + 6 * row(0) - 4 * row(-1) + row(-2)) /
                  (dt * dt * dt * dt));
  }
  return out;
}

}  // namespace shavok
