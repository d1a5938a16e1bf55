#pragma once

// The finite Wigner chaos as exact data: chaos vectors Y = sum_n I_n(f_n),
// Ito products, adjoints, traces, L^2 inner products, free Brownian motion
// elements, moments, Haagerup bounds, and truncated Fock matrix
// representations.

#include <map>
#include <optional>

#include "wchaos/fock.hpp"
#include "wchaos/grid.hpp"

namespace wchaos {

// Finite chaos vector: degree n maps to the kernel tensor f_n of I_n(f_n).
// Absent degrees are zero; stored tensors are kept exactly-nonzero, so the
// zero element is the empty map and top_degree is the largest stored key.
struct ChaosElement {
  GridSpec grid;
  std::map<int, CoeffTensor> degrees;
};

ChaosElement chaos_zero(const GridSpec& grid);
ChaosElement chaos_scalar(const GridSpec& grid, Complex value);  // I_0(value)
ChaosElement chaos_one(const GridSpec& grid);                    // the unit
ChaosElement chaos_from_tensor(const CoeffTensor& f);            // I_n(f)

// Largest degree carrying a nonzero tensor; empty for the zero element.
std::optional<int> top_degree(const ChaosElement& Y);

bool is_zero(const ChaosElement& Y);

// Kernel tensor of degree n (zero tensor if absent).
CoeffTensor component(const ChaosElement& Y, int n);

// Linear structure (same grid required for +/-).
ChaosElement operator+(const ChaosElement& Y, const ChaosElement& Z);
ChaosElement operator-(const ChaosElement& Y, const ChaosElement& Z);
ChaosElement operator*(Complex a, const ChaosElement& Y);

// The Ito product: degree-k output kernel = sum over n + m - 2p = k of
// contract_p(f_n, g_m, p). Exact -- the finite chaos is closed under
// multiplication, so no truncation occurs.
ChaosElement ito_product(const ChaosElement& Y, const ChaosElement& Z);

// Y* via the degree-wise mirror involution: I_n(f)* = I_n(f*).
ChaosElement adjoint(const ChaosElement& Y);

// tau(Y): the degree-0 coefficient (higher chaoses are centered).
Complex trace(const ChaosElement& Y);

// <Y,Z>_{L^2} = sum_n inner(f_n, g_n); equals trace(adjoint(Z) * Y).
Complex l2_inner(const ChaosElement& Y, const ChaosElement& Z);
double l2_norm(const ChaosElement& Y);

// True iff every kernel is mirror symmetric within tol (Y = Y*).
bool is_self_adjoint(const ChaosElement& Y, double tol);

// Matrix of Y acting on the degree-D truncated Fock space. The column of a
// basis word w of length l collects sum_p contract_p(f_n, e_w, p) over the
// degrees n of Y, with output degrees above D discarded (compression).
OperatorMatrix matrix_rep(const ChaosElement& Y, int D);

// The chaos vector of Y as a Fock vector (= Y applied to the vacuum),
// degrees above basis.max_degree discarded.
FockVector chaos_vector(const ChaosElement& Y, const FockBasis& basis);

// Free Brownian motion S_t = I_1(1_{[0,t]}) projected onto the grid span;
// exact for grid-aligned t. Requires 0 <= t <= horizon.
ChaosElement free_bm(const GridSpec& grid, double t);

// tau(Y^k) by iterated Ito products; exact. Requires k >= 0.
Complex moment(const ChaosElement& Y, int k);

// sum_n (n+1) ||f_n||: a certified upper bound on the operator norm of Y.
double haagerup_bound(const ChaosElement& Y);

}  // namespace wchaos
