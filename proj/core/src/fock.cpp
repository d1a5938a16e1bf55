#include "wchaos/fock.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace wchaos {

namespace {

void require_direction(const FockBasis& basis, const CoeffTensor& h, const char* op) {
  if (h.degree != 1) {
    throw std::invalid_argument(std::string(op) + ": direction must have degree 1");
  }
  if (!(h.grid == basis.grid)) {
    throw std::invalid_argument(std::string(op) + ": grid mismatch");
  }
}

}  // namespace

std::size_t FockBasis::index_of(const std::vector<int>& word) const {
  const int len = static_cast<int>(word.size());
  if (len > max_degree) {
    throw std::invalid_argument("FockBasis::index_of: word longer than max degree");
  }
  std::size_t flat = 0;
  for (int i : word) {
    if (i < 0 || i >= grid.cells) {
      throw std::invalid_argument("FockBasis::index_of: cell index out of range");
    }
    flat = flat * static_cast<std::size_t>(grid.cells) + static_cast<std::size_t>(i);
  }
  return offsets[static_cast<std::size_t>(len)] + flat;
}

FockBasis enumerate_basis(const GridSpec& grid, int D) {
  if (D < 0) throw std::invalid_argument("enumerate_basis: negative max degree");
  if (!(grid.horizon > 0.0) || grid.cells < 1) {
    throw std::invalid_argument("enumerate_basis: invalid grid");
  }
  FockBasis basis;
  basis.grid = grid;
  basis.max_degree = D;
  basis.offsets.resize(static_cast<std::size_t>(D) + 2);
  std::size_t index = 0;
  for (int len = 0; len <= D; ++len) {
    basis.offsets[static_cast<std::size_t>(len)] = index;
    const std::size_t count = tensor_size(grid, len);
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::vector<int> word(static_cast<std::size_t>(len));
      std::size_t rest = flat;
      for (int d = len - 1; d >= 0; --d) {
        word[static_cast<std::size_t>(d)] = static_cast<int>(rest % grid.cells);
        rest /= static_cast<std::size_t>(grid.cells);
      }
      basis.words.push_back(std::move(word));
      ++index;
    }
  }
  basis.offsets[static_cast<std::size_t>(D) + 1] = index;
  return basis;
}

OperatorMatrix ladder_matrix(const FockBasis& basis, const CoeffTensor& h, LadderKind kind) {
  require_direction(basis, h, "ladder_matrix");
  const std::size_t dim = basis.dimension();
  const std::size_t m = static_cast<std::size_t>(basis.grid.cells);

  OperatorMatrix A{basis, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                 static_cast<Eigen::Index>(dim))};
  // Creation: column of word w (length l < D) has entry h_j at row (j . w).
  // In flat terms, (j . w) sits at offsets[l+1] + j*m^l + flat(w).
  for (int len = 0; len < basis.max_degree; ++len) {
    const std::size_t col_base = basis.offsets[static_cast<std::size_t>(len)];
    const std::size_t row_base = basis.offsets[static_cast<std::size_t>(len) + 1];
    const std::size_t count = tensor_size(basis.grid, len);
    for (std::size_t flat = 0; flat < count; ++flat) {
      for (std::size_t j = 0; j < m; ++j) {
        A.entries(static_cast<Eigen::Index>(row_base + j * count + flat),
                  static_cast<Eigen::Index>(col_base + flat)) = h.c[j];
      }
    }
  }
  if (kind == LadderKind::annihilate) {
    A.entries = A.entries.adjoint().eval();
  }
  return A;
}

OperatorMatrix field_matrix(const FockBasis& basis, const CoeffTensor& h) {
  require_direction(basis, h, "field_matrix");
  for (const auto& v : h.c) {
    if (v.imag() != 0.0) {
      throw std::invalid_argument("field_matrix: direction must have real coefficients");
    }
  }
  OperatorMatrix A = ladder_matrix(basis, h, LadderKind::create);
  A.entries += A.entries.adjoint().eval();
  return A;
}

OperatorMatrix wick_matrix_blocks(const FockBasis& basis,
                                  const std::vector<std::pair<int, int>>& blocks) {
  const Eigen::Index dim = static_cast<Eigen::Index>(basis.dimension());
  Eigen::MatrixXcd product = Eigen::MatrixXcd::Identity(dim, dim);
  int previous_index = -1;
  for (const auto& [index, exponent] : blocks) {
    if (index < 0 || index >= basis.grid.cells) {
      throw std::invalid_argument("wick_matrix: cell index out of range");
    }
    if (exponent < 1) {
      throw std::invalid_argument("wick_matrix: block exponent must be positive");
    }
    if (index == previous_index) {
      throw std::invalid_argument("wick_matrix: adjacent blocks must have distinct indices");
    }
    previous_index = index;

    const Eigen::MatrixXcd X = field_matrix(basis, basis_vector(basis.grid, index)).entries;
    // Chebyshev recursion on matrices: U_0 = 1, U_1 = X, U_{k+1} = X U_k - U_{k-1}.
    Eigen::MatrixXcd u_prev = Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd u_cur = X;
    for (int k = 1; k < exponent; ++k) {
      Eigen::MatrixXcd u_next = X * u_cur - u_prev;
      u_prev = std::move(u_cur);
      u_cur = std::move(u_next);
    }
    product = product * u_cur;
  }
  return OperatorMatrix{basis, std::move(product)};
}

OperatorMatrix wick_matrix(const FockBasis& basis, const std::vector<int>& word) {
  std::vector<std::pair<int, int>> blocks;
  for (int i : word) {
    if (!blocks.empty() && blocks.back().first == i) {
      ++blocks.back().second;
    } else {
      blocks.emplace_back(i, 1);
    }
  }
  return wick_matrix_blocks(basis, blocks);
}

Complex vacuum_expectation(const OperatorMatrix& A) {
  return A.entries(0, 0);
}

double operator_norm_estimate(const OperatorMatrix& A) {
  const Eigen::Index dim = A.entries.rows();
  if (dim == 0) return 0.0;

  const double scale = A.entries.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;

  // Self-adjoint matrices get an exact (dense) spectral radius.
  const double herm_defect = (A.entries - A.entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect <= 1e-13 * scale) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(A.entries,
                                                           Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
  }

  // Small general matrices: dense SVD.
  if (dim <= 192) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A.entries);
    return svd.singularValues()(0);
  }

  // Larger general matrices: top singular value via the Hermitian matrix
  // A^H A -- deterministic and free of convergence knobs.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gram(
      A.entries.adjoint() * A.entries, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, gram.eigenvalues().maxCoeff()));
}

}  // namespace wchaos
