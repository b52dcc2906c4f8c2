#pragma once

#include "shavok/linalg.hpp"

#include <span>
#include <vector>

namespace shavok {

/// |A + A^T|_F / (2 |A|_F): 0 for skew, 1 for symmetric.
double antisymmetry_score(const Matrix& a);

/// Fraction of Frobenius energy outside the three central diagonals.
double tridiagonality_score(const Matrix& a);

struct StructureReport {
  double antisymmetry = 0.0;
  double tridiagonality = 0.0;
  double offband_max = 0.0;
  std::vector<double> superdiagonal;
  std::vector<double> subdiagonal;
};

StructureReport structure_report(const Matrix& a);

struct SpectrumComparison {
  std::vector<double> pair_distances;  // in the order of the first spectrum
  std::vector<Index> pairing;          // pairing[i] is the partner of a[i] in b
  double mean_distance = 0.0;
  double max_real_part_a = 0.0;
  double max_real_part_b = 0.0;
};

/// Minimum-cost perfect matching on |w_i - w'_j|.
SpectrumComparison spectrum_distance(const ComplexVector& a, const ComplexVector& b);
SpectrumComparison spectrum_distance(const Spectrum& a, const Spectrum& b);

/// Optimal assignment for a square cost matrix; result[i] is the column given to row i.
std::vector<Index> hungarian_assignment(const Matrix& cost);

/// Smallest r with sigma_{r+1} <= eps * sigma_1, or the list length if none.
std::size_t sv_decay_report(std::span<const double> sigma, double eps);

}  // namespace shavok
