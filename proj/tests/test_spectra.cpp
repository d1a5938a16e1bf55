#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wchaos/chaos.hpp"
#include "wchaos/grid.hpp"
#include "wchaos/spectra.hpp"

namespace {

using namespace wchaos;

const GridSpec g11{1.0, 1};
const GridSpec g22{2.0, 2};

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("truncated free field eigensystem") {
  const ChaosElement S = free_bm(g11, 1.0);

  SUBCASE("two point masses at +-1 for D = 1") {
    const SpectralMeasure mu = vacuum_spectral_measure(S, 1);
    REQUIRE(mu.points.size() == 2);
    CHECK(std::abs(mu.points[0].eigenvalue + 1.0) <= 1e-12);
    CHECK(std::abs(mu.points[1].eigenvalue - 1.0) <= 1e-12);
    CHECK(std::abs(mu.points[0].weight - 0.5) <= 1e-12);
    CHECK(std::abs(mu.points[1].weight - 0.5) <= 1e-12);
  }

  SUBCASE("closed form at D = 3") {
    const int D = 3;
    const SpectralMeasure mu = vacuum_spectral_measure(S, D);
    REQUIRE(mu.points.size() == static_cast<std::size_t>(D) + 1);
    const double pi = std::acos(-1.0);
    for (std::size_t j = 0; j < mu.points.size(); ++j) {
      const int k = D + 1 - static_cast<int>(j);  // ascending order
      const double angle = k * pi / (D + 2);
      CHECK(std::abs(mu.points[j].eigenvalue - 2.0 * std::cos(angle)) <= 1e-10);
      CHECK(std::abs(mu.points[j].weight -
                     2.0 / (D + 2) * std::sin(angle) * std::sin(angle)) <= 1e-10);
    }
  }
}

TEST_CASE("constant elements merge to a single atom") {
  const SpectralMeasure mu =
      vacuum_spectral_measure(chaos_scalar(g22, Complex(0.5, 0.0)), 3);
  REQUIRE(mu.points.size() == 1);
  CHECK(std::abs(mu.points[0].eigenvalue - 0.5) <= 1e-12);
  CHECK(std::abs(mu.points[0].weight - 1.0) <= 1e-12);
}

TEST_CASE("weights form a probability vector and eigenvalues ascend") {
  const ChaosElement S = free_bm(g22, 2.0);
  const SpectralMeasure mu = vacuum_spectral_measure(S, 5);
  double total = 0.0;
  for (std::size_t j = 0; j < mu.points.size(); ++j) {
    CHECK(mu.points[j].weight >= -1e-15);
    if (j > 0) CHECK(mu.points[j].eigenvalue > mu.points[j - 1].eigenvalue);
    total += mu.points[j].weight;
  }
  CHECK(std::abs(total - 1.0) <= 1e-12);
  CHECK(std::abs(measure_moment(mu, 0) - 1.0) <= 1e-12);
  CHECK(std::abs(measure_moment(mu, 1)) <= 1e-12);
  CHECK(std::abs(measure_moment(mu, 2) - 2.0) <= 1e-10);
}

TEST_CASE("spectral preconditions") {
  CHECK_THROWS_AS(vacuum_spectral_measure(
                      chaos_from_tensor(Complex(0.0, 1.0) * basis_vector(g11, 0)), 3),
                  std::invalid_argument);
  const ChaosElement I2 = chaos_from_tensor(basis_tensor(g11, {0, 0}));
  CHECK_THROWS_AS(vacuum_spectral_measure(I2, 1), std::invalid_argument);
}

TEST_CASE("moment comparison window") {
  const ChaosElement S = free_bm(g11, 1.0);
  const std::vector<MomentCompareRow> rows = moment_compare(S, 4, 10);
  REQUIRE(rows.size() == 11);
  const double catalan[11] = {1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42};
  for (const MomentCompareRow& row : rows) {
    CHECK(std::abs(row.exact - Complex(catalan[row.k], 0.0)) <= 1e-10);
    CHECK(row.guaranteed == (row.k <= 4));
    if (row.guaranteed) CHECK(row.abs_error <= 1e-10);
  }
  // At D = 4 the only path escaping the truncation in ten steps is the full
  // staircase, so exactly one unit of the tenth moment is lost.
  CHECK(std::abs(rows[10].abs_error - 1.0) <= 1e-9);
}

TEST_CASE("semicircle reference moments") {
  const double catalan[9] = {1, 0, 1, 0, 2, 0, 5, 0, 14};
  for (int k = 0; k <= 8; ++k) {
    CHECK(std::abs(semicircle_reference(1.0, k) - catalan[k]) <= 1e-12);
  }
  CHECK(std::abs(semicircle_reference(2.0, 2) - 2.0) <= 1e-12);
  CHECK(std::abs(semicircle_reference(2.0, 4) - 8.0) <= 1e-12);
  CHECK_THROWS_AS(semicircle_reference(0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(semicircle_reference(1.0, -1), std::invalid_argument);
}

TEST_CASE("atom scan") {
  // A genuine atom keeps full window weight at every truncation.
  const ChaosElement constant = chaos_scalar(g11, Complex(0.5, 0.0));
  for (const AtomScanRow& row : atom_scan(constant, {2, 4}, 0.1)) {
    CHECK(std::abs(row.max_window_weight - 1.0) <= 1e-12);
  }

  // The semicircle's windows thin out at the known 2/(D+2) rate: for this eps
  // the windows isolate single eigenvalues, so the maximum is the central
  // vacuum weight.
  const ChaosElement S = free_bm(g11, 1.0);
  const std::vector<AtomScanRow> rows = atom_scan(S, {4, 6, 8, 10}, 0.05);
  REQUIRE(rows.size() == 4);
  double previous = 2.0;
  for (const AtomScanRow& row : rows) {
    CHECK(std::abs(row.max_window_weight - 2.0 / (row.D + 2)) <= 1e-10);
    CHECK(row.max_window_weight < previous);
    previous = row.max_window_weight;
  }

  CHECK_THROWS_AS(atom_scan(S, {4, 6}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(atom_scan(S, {6, 4}, 0.1), std::invalid_argument);
  CHECK(atom_scan(S, {}, 0.1).empty());
}

}  // TEST_SUITE("spectra")
