#pragma once

// Distribution diagnostics: vacuum spectral measures of self-adjoint chaos
// elements at finite truncation, moment cross-checks against the exact chaos
// algebra, semicircle reference moments, and atom-weight window scans.

#include <vector>

#include "wchaos/chaos.hpp"

namespace wchaos {

struct SpectralPoint {
  double eigenvalue = 0.0;
  double weight = 0.0;
};

// Finitely supported approximation of the distribution of a self-adjoint
// element: eigenvalues ascending, weights non-negative and summing to 1.
struct SpectralMeasure {
  std::vector<SpectralPoint> points;
};

// Vacuum spectral measure of Y at truncation degree D: eigen-decompose
// matrix_rep(Y, D), weight each eigenvector v by |<vacuum, v>|^2, and merge
// eigenvalues lying within 1e-9 of their neighbor. Requires self-adjoint Y
// (every kernel mirror symmetric within 1e-12) and D >= top_degree(Y).
SpectralMeasure vacuum_spectral_measure(const ChaosElement& Y, int D);

// sum_i w_i * lambda_i^k.
double measure_moment(const SpectralMeasure& mu, int k);

struct MomentCompareRow {
  int k = 0;
  Complex exact;           // tau(Y^k) from the chaos algebra
  double truncated = 0.0;  // moment of the D-truncated measure
  double abs_error = 0.0;
  bool guaranteed = false;  // exact agreement promised: k * top_degree <= D
};

// Exact moments against truncated-measure moments for k = 0..K.
std::vector<MomentCompareRow> moment_compare(const ChaosElement& Y, int D, int K);

// k'th moment of the semicircle law with mean 0 and variance t: zero for odd
// k, Catalan_{k/2} * t^{k/2} for even k. Requires t > 0, k >= 0.
double semicircle_reference(double t, int k);

struct AtomScanRow {
  int D = 0;
  double max_window_weight = 0.0;
};

// For each truncation degree in D_list, the maximum total weight the vacuum
// spectral measure places in any closed window of radius eps. A genuine atom
// of mass w keeps every row at >= w; decay toward zero is evidence against
// atoms. Requires self-adjoint Y, eps > 0, and increasing degrees.
std::vector<AtomScanRow> atom_scan(const ChaosElement& Y,
                                   const std::vector<int>& D_list, double eps);

}  // namespace wchaos
