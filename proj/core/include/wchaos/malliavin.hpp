#pragma once

// Free Malliavin operators at grid scale: directional gradients and
// divergences, the full gradient as a simple biprocess, biprocess pairing and
// B_2 norm, stochastic integrals of adapted biprocesses, the number operator,
// partial traces, bimodule actions, and the dagger involution on
// chaos (x) chaos.

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "wchaos/chaos.hpp"
#include "wchaos/grid.hpp"

namespace wchaos {

// Element of chaos (x) chaos. Component (a,b) is one merged tensor of degree
// a+b with a declared split after slot a, encoding a sum of pure tensors
// x (x) y with deg x = a, deg y = b via L^2(S) (x) L^2(S) ~ (+) L^2(R_+^a) (x)
// L^2(R_+^b). Stored components are exactly nonzero; absent means zero.
struct ChaosBitensor {
  GridSpec grid;
  std::map<std::pair<int, int>, CoeffTensor> components;
};

// Piecewise-constant biprocess t -> U_t: values[i] is the constant bitensor
// on cell i, so there are exactly grid.cells entries.
struct SimpleBiprocess {
  GridSpec grid;
  std::vector<ChaosBitensor> values;
};

ChaosBitensor bitensor_zero(const GridSpec& grid);

// Y (x) Z as a bitensor: component (n,m) = tensor(f_n, g_m).
ChaosBitensor outer_bitensor(const ChaosElement& Y, const ChaosElement& Z);

// Merged tensor of component (a,b) (zero tensor if absent).
CoeffTensor bitensor_component(const ChaosBitensor& U, int a, int b);

bool is_zero(const ChaosBitensor& U);

// Linear structure (same grid required for +/-).
ChaosBitensor operator+(const ChaosBitensor& U, const ChaosBitensor& V);
ChaosBitensor operator-(const ChaosBitensor& U, const ChaosBitensor& V);
ChaosBitensor operator*(Complex a, const ChaosBitensor& U);

// <U,V> = sum over matching components of the tensor inner product (linear in
// the first argument, conjugate-linear in the second).
Complex bitensor_inner(const ChaosBitensor& U, const ChaosBitensor& V);
double bitensor_norm(const ChaosBitensor& U);

// (sum x (x) y)^dagger = sum y* (x) x*: swap legs, adjoint both. On merged
// components this is the full-tuple mirror involution with key (a,b) -> (b,a).
ChaosBitensor dagger(const ChaosBitensor& U);

// Left/right chaos module actions: Yl . U . Yr with the Ito product applied
// legwise; component-wise (Yl * x) (x) (y * Yr).
ChaosBitensor bimodule_action(const ChaosElement& Yleft, const ChaosBitensor& U,
                              const ChaosElement& Yright);

// U # z = sum (x (x) y) # z = sum x * z * y with Ito products on both sides.
ChaosElement sharp_product(const ChaosBitensor& U, const ChaosElement& z);

// Directional gradient nabla^h Y: slot k of f_n paired against conj(h) yields
// the (k-1, n-k) component. Requires h of degree 1 on Y's grid.
ChaosBitensor directional_gradient(const ChaosElement& Y, const CoeffTensor& h);

// Directional divergence delta^h U: component (a,b) -> degree a+1+b kernel
// with h inserted (unconjugated) at the split; delta^h(1 (x) 1) = X(h).
ChaosElement directional_divergence(const ChaosBitensor& U, const CoeffTensor& h);

// The full gradient as a simple biprocess: V_i = (m/T)^{1/2} nabla^{e_i} Y.
SimpleBiprocess gradient_biprocess(const ChaosElement& Y);

// <U, h> = sum_i V_i <1_{cell i}, h> = sum_i (T/m)^{1/2} conj(h_i) V_i;
// pairing gradient_biprocess(Y) with h reproduces nabla^h Y exactly.
ChaosBitensor biprocess_pair(const SimpleBiprocess& U, const CoeffTensor& h);

// delta(U) = sum_i (T/m)^{1/2} delta^{e_i}(V_i), the chaos-insertion form of
// the divergence of a simple biprocess.
ChaosElement divergence_simple(const SimpleBiprocess& U);

// True iff every V_i touches only basis indices < i on both legs (left cell
// endpoint convention: V_i must lie in M_{iT/m} (.) M_{iT/m}).
bool is_adapted(const SimpleBiprocess& U);

// int U # dS = sum_i V_i # (S_{(i+1)T/m} - S_{iT/m}). Defined on adapted
// biprocesses only, where it coincides with divergence_simple.
ChaosElement stochastic_integral(const SimpleBiprocess& U);

// ||U||_{B_2}^2 = (T/m) sum_i ||V_i||^2.
double b2_norm(const SimpleBiprocess& U);

// N Y: degree-n kernel scaled by n; satisfies N = delta o nabla.
ChaosElement number_operator(const ChaosElement& Y);

enum class TraceSide { left, right };

// Partial traces: side == right applies (id (x) tau), keeping components
// (a, 0); side == left applies (tau (x) id), keeping components (0, b).
ChaosElement partial_trace(const ChaosBitensor& U, TraceSide side);

// One more directional gradient applied to a single leg of a bitensor,
// producing (a,b,c)-keyed merged tensors. These state coassociativity:
// gradient_left_leg(nabla^{h2} Y, h1) = gradient_right_leg(nabla^{h1} Y, h2).
using ChaosTritensor = std::map<std::array<int, 3>, CoeffTensor>;
ChaosTritensor gradient_left_leg(const ChaosBitensor& U, const CoeffTensor& h);
ChaosTritensor gradient_right_leg(const ChaosBitensor& U, const CoeffTensor& h);

// Largest absolute coefficient difference between two tri-tensors.
double tritensor_distance(const ChaosTritensor& A, const ChaosTritensor& B);

}  // namespace wchaos
