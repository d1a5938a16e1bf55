#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "wchaos/fock.hpp"
#include "wchaos/grid.hpp"

namespace {

using namespace wchaos;

const GridSpec g11{1.0, 1};
const GridSpec g22{2.0, 2};

}  // namespace

TEST_SUITE("fock") {

TEST_CASE("basis enumeration is length-then-lex") {
  const FockBasis basis = enumerate_basis(g22, 2);
  CHECK(basis.dimension() == 7);
  REQUIRE(basis.offsets.size() == 4);
  CHECK(basis.offsets[0] == 0);
  CHECK(basis.offsets[1] == 1);
  CHECK(basis.offsets[2] == 3);
  CHECK(basis.offsets[3] == 7);
  CHECK(basis.words[0].empty());
  CHECK(basis.words[2] == std::vector<int>{1});
  CHECK(basis.words[3] == std::vector<int>{0, 0});
  CHECK(basis.words[4] == std::vector<int>{0, 1});
  CHECK(basis.index_of({1, 0}) == 5);
  CHECK(basis.index_of({}) == 0);
  CHECK_THROWS_AS(basis.index_of({0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(basis.index_of({3}), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_basis(g22, -1), std::invalid_argument);
}

TEST_CASE("ladder matrices") {
  const FockBasis basis = enumerate_basis(g11, 2);
  const CoeffTensor e = basis_vector(g11, 0);
  const OperatorMatrix create = ladder_matrix(basis, e, LadderKind::create);
  // Creation shifts degree up: Omega -> e -> e (x) e.
  CHECK(create.entries(1, 0) == Complex(1.0, 0.0));
  CHECK(create.entries(2, 1) == Complex(1.0, 0.0));
  CHECK(create.entries.cwiseAbs().sum() == 2.0);

  const OperatorMatrix annih = ladder_matrix(basis, e, LadderKind::annihilate);
  CHECK((annih.entries - create.entries.adjoint()).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(ladder_matrix(basis, basis_tensor(g11, {0, 0}), LadderKind::create),
                  std::invalid_argument);
  CHECK_THROWS_AS(ladder_matrix(basis, basis_vector(g22, 0), LadderKind::create),
                  std::invalid_argument);
}

TEST_CASE("field matrix on one cell is the Jacobi matrix") {
  const FockBasis basis = enumerate_basis(g11, 1);
  const OperatorMatrix X = field_matrix(basis, basis_vector(g11, 0));
  CHECK(X.entries(0, 0) == Complex(0.0, 0.0));
  CHECK(X.entries(0, 1) == Complex(1.0, 0.0));
  CHECK(X.entries(1, 0) == Complex(1.0, 0.0));
  CHECK(X.entries(1, 1) == Complex(0.0, 0.0));

  CHECK_THROWS_AS(field_matrix(basis, Complex(0.0, 1.0) * basis_vector(g11, 0)),
                  std::invalid_argument);
}

TEST_CASE("wick matrices act on the vacuum as basis words") {
  const FockBasis basis = enumerate_basis(g11, 4);
  const OperatorMatrix W = wick_matrix(basis, {0, 0});
  // Column of the vacuum is e (x) e (index 2), nothing else.
  CHECK(W.entries(2, 0) == Complex(1.0, 0.0));
  CHECK(std::abs(W.entries(0, 0)) == 0.0);
  CHECK(std::abs(W.entries(1, 0)) == 0.0);
  CHECK(vacuum_expectation(W) == Complex(0.0, 0.0));

  // Chebyshev identities at the matrix level.
  const Eigen::MatrixXcd X = field_matrix(basis, basis_vector(g11, 0)).entries;
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(X.rows(), X.cols());
  CHECK((wick_matrix(basis, {0, 0}).entries - (X * X - I)).cwiseAbs().maxCoeff() <=
        1e-14);
  CHECK((wick_matrix(basis, {0, 0, 0}).entries - (X * X * X - 2.0 * X))
            .cwiseAbs()
            .maxCoeff() <= 1e-14);

  // Alternating word on two cells.
  const FockBasis wide = enumerate_basis(g22, 3);
  const OperatorMatrix W010 = wick_matrix(wide, {0, 1, 0});
  CHECK(W010.entries(static_cast<Eigen::Index>(wide.index_of({0, 1, 0})), 0) ==
        Complex(1.0, 0.0));
  CHECK(std::abs(W010.entries.col(0).norm() - 1.0) <= 1e-14);

  // Empty word is the identity.
  CHECK((wick_matrix(basis, {}).entries -
         Eigen::MatrixXcd::Identity(X.rows(), X.cols()))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("wick block validation") {
  const FockBasis basis = enumerate_basis(g22, 2);
  CHECK_THROWS_AS(wick_matrix_blocks(basis, {{0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(wick_matrix_blocks(basis, {{0, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(wick_matrix_blocks(basis, {{5, 1}}), std::invalid_argument);
}

TEST_CASE("operator norm estimates") {
  // Zero matrix.
  const FockBasis tiny = enumerate_basis(g11, 1);
  OperatorMatrix Z{tiny, Eigen::MatrixXcd::Zero(2, 2)};
  CHECK(operator_norm_estimate(Z) == 0.0);

  // Hermitian path: truncated field on one cell, top eigenvalue 2cos(pi/(D+2)),
  // which at D = 4 is exactly sqrt(3).
  const FockBasis basis = enumerate_basis(g11, 4);
  const OperatorMatrix X = field_matrix(basis, basis_vector(g11, 0));
  CHECK(std::abs(operator_norm_estimate(X) - std::sqrt(3.0)) <= 1e-12);

  // Small dense SVD path: a creation operator has norm ||h||.
  const FockBasis wide = enumerate_basis(g22, 1);
  const CoeffTensor h = basis_vector(g22, 0) +
                        Complex(0.0, 1.0) * basis_vector(g22, 1);
  const OperatorMatrix C = ladder_matrix(wide, h, LadderKind::create);
  CHECK(std::abs(operator_norm_estimate(C) - std::sqrt(2.0)) <= 1e-12);

  // Large non-Hermitian path (dimension 255 > 192): still exactly ||h||.
  const FockBasis big = enumerate_basis(g22, 7);
  const CoeffTensor h2 = Complex(3.0, 0.0) * basis_vector(g22, 0) +
                         Complex(0.0, 4.0) * basis_vector(g22, 1);
  const OperatorMatrix C2 = ladder_matrix(big, h2, LadderKind::create);
  CHECK(std::abs(operator_norm_estimate(C2) - 5.0) <= 1e-10);
}

}  // TEST_SUITE("fock")
