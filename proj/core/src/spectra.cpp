#include "wchaos/spectra.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace wchaos {

namespace {

constexpr double kSelfAdjointTol = 1e-12;
constexpr double kMergeTol = 1e-9;

void require_spectral_input(const ChaosElement& Y, int D, const char* op) {
  if (!is_self_adjoint(Y, kSelfAdjointTol)) {
    throw std::invalid_argument(std::string(op) + ": element is not self-adjoint");
  }
  const std::optional<int> top = top_degree(Y);
  if (top && D < *top) {
    throw std::invalid_argument(std::string(op) +
                                ": truncation degree below the top chaos degree");
  }
}

}  // namespace

SpectralMeasure vacuum_spectral_measure(const ChaosElement& Y, int D) {
  require_spectral_input(Y, D, "vacuum_spectral_measure");

  const OperatorMatrix A = matrix_rep(Y, D);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(A.entries);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("vacuum_spectral_measure: eigen-decomposition failed");
  }
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  const Eigen::MatrixXcd& vectors = solver.eigenvectors();

  SpectralMeasure mu;
  const Eigen::Index dim = values.size();
  Eigen::Index i = 0;
  while (i < dim) {
    // Merge the maximal run of eigenvalues whose consecutive gaps stay
    // within the merge tolerance; report the plain mean and the summed
    // vacuum weight.
    Eigen::Index j = i;
    double sum_value = 0.0;
    double sum_weight = 0.0;
    while (j < dim && (j == i || values(j) - values(j - 1) <= kMergeTol)) {
      sum_value += values(j);
      sum_weight += std::norm(vectors(0, j));
      ++j;
    }
    mu.points.push_back(
        SpectralPoint{sum_value / static_cast<double>(j - i), sum_weight});
    i = j;
  }
  return mu;
}

double measure_moment(const SpectralMeasure& mu, int k) {
  if (k < 0) throw std::invalid_argument("measure_moment: negative power");
  double total = 0.0;
  for (const SpectralPoint& pt : mu.points) {
    total += pt.weight * std::pow(pt.eigenvalue, k);
  }
  return total;
}

std::vector<MomentCompareRow> moment_compare(const ChaosElement& Y, int D, int K) {
  if (K < 0) throw std::invalid_argument("moment_compare: negative moment count");
  const SpectralMeasure mu = vacuum_spectral_measure(Y, D);
  const std::optional<int> top = top_degree(Y);
  const int top_deg = top ? *top : 0;

  std::vector<MomentCompareRow> rows;
  rows.reserve(static_cast<std::size_t>(K) + 1);
  for (int k = 0; k <= K; ++k) {
    MomentCompareRow row;
    row.k = k;
    row.exact = moment(Y, k);
    row.truncated = measure_moment(mu, k);
    row.abs_error = std::abs(row.exact - Complex(row.truncated, 0.0));
    row.guaranteed = k * top_deg <= D;
    rows.push_back(row);
  }
  return rows;
}

double semicircle_reference(double t, int k) {
  if (!(t > 0.0)) throw std::invalid_argument("semicircle_reference: t must be positive");
  if (k < 0) throw std::invalid_argument("semicircle_reference: negative moment");
  if (k % 2 == 1) return 0.0;
  const int half = k / 2;
  double catalan = 1.0;  // C_0
  for (int j = 0; j < half; ++j) {
    catalan = catalan * 2.0 * (2.0 * j + 1.0) / (j + 2.0);
  }
  return catalan * std::pow(t, half);
}

std::vector<AtomScanRow> atom_scan(const ChaosElement& Y,
                                   const std::vector<int>& D_list, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("atom_scan: eps must be positive");
  for (std::size_t i = 1; i < D_list.size(); ++i) {
    if (D_list[i] <= D_list[i - 1]) {
      throw std::invalid_argument("atom_scan: truncation degrees must increase");
    }
  }

  std::vector<AtomScanRow> rows;
  rows.reserve(D_list.size());
  for (int D : D_list) {
    const SpectralMeasure mu = vacuum_spectral_measure(Y, D);
    // Best closed window of radius eps: slide the left edge over the sorted
    // eigenvalues and grow the right edge while it stays within 2*eps.
    double best = 0.0;
    double window = 0.0;
    std::size_t lo = 0;
    for (std::size_t hi = 0; hi < mu.points.size(); ++hi) {
      window += mu.points[hi].weight;
      while (mu.points[hi].eigenvalue - mu.points[lo].eigenvalue > 2.0 * eps) {
        window -= mu.points[lo].weight;
        ++lo;
      }
      best = std::max(best, window);
    }
    rows.push_back(AtomScanRow{D, best});
  }
  return rows;
}

}  // namespace wchaos
