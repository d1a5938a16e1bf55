#pragma once

// Degree-truncated full Fock space over the grid span: deterministic basis
// enumeration, creation/annihilation/field operator matrices, Wick-product
// matrices via the Chebyshev recursion, vacuum expectation, and operator-norm
// estimates.

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "wchaos/grid.hpp"

namespace wchaos {

// All index words (i1,..,il), 0 <= ij < cells, of length 0..max_degree,
// enumerated by length and then lexicographically. The empty word (index 0)
// is the vacuum. Dimension = sum_{l=0}^{D} cells^l.
struct FockBasis {
  GridSpec grid;
  int max_degree = 0;  // D
  std::vector<std::vector<int>> words;
  std::vector<std::size_t> offsets;  // offsets[l] = index of first word of length l; offsets[D+1] = dimension

  std::size_t dimension() const { return words.size(); }
  // Index of a word of length <= max_degree in the enumeration.
  std::size_t index_of(const std::vector<int>& word) const;
  friend bool operator==(const FockBasis& a, const FockBasis& b) {
    return a.grid == b.grid && a.max_degree == b.max_degree;
  }
};

// Dense matrix of an operator compressed to the truncated Fock space.
struct OperatorMatrix {
  FockBasis basis;
  Eigen::MatrixXcd entries;
};

// Vector over the truncated Fock basis (e.g. the vacuum, or Y * vacuum).
struct FockVector {
  FockBasis basis;
  Eigen::VectorXcd coefficients;
};

enum class LadderKind { create, annihilate };

FockBasis enumerate_basis(const GridSpec& grid, int D);

// Creation l(h): word w -> sum_j h_j * (j . w), images of length > D truncated
// to zero. Annihilation l*(h): the conjugate transpose of creation, i.e.
// (i . w) -> conj(h_i) * w and vacuum -> 0. The two kinds are exact mutual
// adjoints entrywise. h must be degree 1 on the basis grid.
OperatorMatrix ladder_matrix(const FockBasis& basis, const CoeffTensor& h, LadderKind kind);

// X(h) = l(h) + l*(h); requires real coefficients (self-adjoint field).
OperatorMatrix field_matrix(const FockBasis& basis, const CoeffTensor& h);

// Wick product of the word (i1..il): decompose into maximal constant blocks
// (j1^{k1},..,jr^{kr}) and form U_{k1}(X(e_{j1})) ... U_{kr}(X(e_{jr})) with
// the Chebyshev recursion U_0 = 1, U_1(X) = X, U_{k+1}(X) = X U_k(X) - U_{k-1}(X).
// Satisfies wick_matrix(w) * vacuum = basis vector of w whenever |w| <= D.
OperatorMatrix wick_matrix(const FockBasis& basis, const std::vector<int>& word);

// Same, from explicit (index, exponent) blocks; adjacent blocks must carry
// distinct indices and exponents must be positive.
OperatorMatrix wick_matrix_blocks(const FockBasis& basis,
                                  const std::vector<std::pair<int, int>>& blocks);

// tau(A) = <A vacuum, vacuum>: the (0,0) entry.
Complex vacuum_expectation(const OperatorMatrix& A);

// Largest singular value (spectral radius for self-adjoint input). This is a
// lower bound for the operator norm of the untruncated operator, converging
// upward as the truncation degree grows.
double operator_norm_estimate(const OperatorMatrix& A);

}  // namespace wchaos
