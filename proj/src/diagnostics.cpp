#include "shavok/diagnostics.hpp"

#include "shavok/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace shavok {

namespace {

void check_scoreable(const Matrix& a, const char* what) {
  require(a.rows() == a.cols() && a.rows() > 0, ErrorKind::parameter,
          std::string(what) + ": matrix must be square and nonempty");
  require(a.allFinite(), ErrorKind::data, std::string(what) + ": matrix has non-finite entries");
  require(a.norm() > 0.0, ErrorKind::numerical,
          std::string(what) + ": score undefined for the zero matrix");
}

}  // namespace

double antisymmetry_score(const Matrix& a) {
  check_scoreable(a, "antisymmetry_score");
  return (a + a.transpose()).norm() / (2.0 * a.norm());
}

double tridiagonality_score(const Matrix& a) {
  check_scoreable(a, "tridiagonality_score");
  double total = 0.0, band = 0.0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      const double e = a(i, j) * a(i, j);
      total += e;
      if (std::abs(i - j) <= 1) band += e;
    }
  }
  return std::clamp(1.0 - band / total, 0.0, 1.0);
}

StructureReport structure_report(const Matrix& a) {
  StructureReport r;
  r.antisymmetry = antisymmetry_score(a);
  r.tridiagonality = tridiagonality_score(a);
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      if (std::abs(i - j) > 1) r.offband_max = std::max(r.offband_max, std::abs(a(i, j)));
    }
  }
  for (Index i = 0; i + 1 < a.rows(); ++i) {
    r.superdiagonal.push_back(a(i, i + 1));
    r.subdiagonal.push_back(a(i + 1, i));
  }
  return r;
}

std::vector<Index> hungarian_assignment(const Matrix& cost) {
  require(cost.rows() == cost.cols(), ErrorKind::parameter,
          "hungarian_assignment: cost matrix must be square");
  const Index n = cost.rows();
  const double inf = std::numeric_limits<double>::infinity();
  // Shortest augmenting path with potentials, 1-based with a dummy column 0.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<Index> p(n + 1, 0), way(n + 1, 0);
  for (Index i = 1; i <= n; ++i) {
    p[0] = i;
    Index j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const Index i0 = p[j0];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const Index j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<Index> assignment(n);
  for (Index j = 1; j <= n; ++j) assignment[p[j] - 1] = j - 1;
  return assignment;
}

SpectrumComparison spectrum_distance(const ComplexVector& a, const ComplexVector& b) {
  require(a.size() == b.size(), ErrorKind::parameter,
          "spectrum_distance: spectra have " + std::to_string(a.size()) + " and " +
              std::to_string(b.size()) + " eigenvalues; truncate to a common rank");
  require(a.size() > 0, ErrorKind::parameter, "spectrum_distance: empty spectra");
  require(a.allFinite() && b.allFinite(), ErrorKind::data,
          "spectrum_distance: non-finite eigenvalue");
  const Index n = a.size();
  Matrix cost(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) cost(i, j) = std::abs(a(i) - b(j));
  }
  SpectrumComparison out;
  out.pairing = hungarian_assignment(cost);
  double sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double d = cost(i, out.pairing[static_cast<std::size_t>(i)]);
    out.pair_distances.push_back(d);
    sum += d;
  }
  out.mean_distance = sum / static_cast<double>(n);
  out.max_real_part_a = a.real().maxCoeff();
  out.max_real_part_b = b.real().maxCoeff();
  return out;
}

SpectrumComparison spectrum_distance(const Spectrum& a, const Spectrum& b) {
  return spectrum_distance(a.eigenvalues, b.eigenvalues);
}

std::size_t sv_decay_report(std::span<const double> sigma, double eps) {
  require(!sigma.empty(), ErrorKind::parameter, "sv_decay_report: empty singular value list");
  require(sigma[0] > 0.0, ErrorKind::parameter, "sv_decay_report: sigma_1 must be positive");
  require(eps >= 0.0, ErrorKind::parameter, "sv_decay_report: eps must be nonnegative");
  for (std::size_t i = 1; i < sigma.size(); ++i) {
    require(sigma[i] <= sigma[i - 1], ErrorKind::parameter,
            "sv_decay_report: singular values must be nonincreasing");
  }
  for (std::size_t r = 1; r < sigma.size(); ++r) {
    if (sigma[r] <= eps * sigma[0]) return r;
  }
  return sigma.size();
}

}  // namespace shavok
