#pragma once

// The reduction engine: tau_p functionals, the Delta_{p,h} operator and its
// iteration down to the top kernel coefficient, the zero-divisor probe, and
// the key-inequality check.

#include <vector>

#include "wchaos/chaos.hpp"
#include "wchaos/grid.hpp"
#include "wchaos/malliavin.hpp"

namespace wchaos {

// One reduction stage: a test element p (the formulas are linear in p, so any
// chaos element is admitted) and a degree-1 direction h.
struct ReductionStep {
  ChaosElement p;
  CoeffTensor h;
};

struct ReductionReport {
  std::vector<int> intermediate_top_degrees;  // after each step; -1 once zero
  Complex final_scalar;
  Complex predicted_scalar;
  double abs_difference;
  bool agrees;
};

// tau_p(f) = tau(p * f), the bilinear pairing
// sum_n sum_idx p_n[idx] * f_n[reversed idx]; equals l2_inner(f, p) whenever
// p is self-adjoint.
Complex tau_p(const ChaosElement& p, const ChaosElement& f);

// Delta_{p,h} Y = (tau (x) id)(p (x) 1 . nabla^h Y). On a degree-n kernel,
// slot k pairs against conj(h) and slots 1..k-1 pair against p's
// degree-(k-1) kernel, emitting a degree-(n-k) kernel; strictly
// degree-reducing.
ChaosElement delta_ph(const ChaosElement& p, const CoeffTensor& h,
                      const ChaosElement& Y);

// Apply delta_ph once per step. With N = top_degree(Y) steps the result is a
// scalar whose predicted value is
// tau(p_1)...tau(p_N) <f_N, h_1 (x) ... (x) h_N>. Requires nonzero Y and
// exactly N steps.
ReductionReport iterate_reduction(const ChaosElement& Y,
                                  const std::vector<ReductionStep>& steps);

struct ZeroDivisorReport {
  double norm_Yu;       // ||Y u||_2
  double norm_Ystar_u;  // ||Y* u||_2
};

// Exact L^2 norms of Yu and Y*u. For nonzero Y and u the finite chaos has no
// zero divisors, so norm_Yu should always land strictly above zero; the probe
// reports the numbers and never asserts the theorem.
ZeroDivisorReport zero_divisor_probe(const ChaosElement& Y, const ChaosElement& u);

struct KeyInequalityReport {
  double lhs;
  double rhs;
  bool holds;
};

// lhs = |<v* . nabla^h x . u, y1 (x) y2>|, rhs the certified bound
// 4 ||h|| (H(v) ||x u||_2 + H(u) ||x* v||_2) H(y1) H(y2) with
// H = haagerup_bound (an upper bound for the operator norm, so the reported
// inequality is implied by the sharp one). Requires real h; holds is
// lhs <= rhs + 1e-9.
KeyInequalityReport key_inequality_check(const ChaosElement& x, const ChaosElement& u,
                                         const ChaosElement& v, const ChaosElement& y1,
                                         const ChaosElement& y2, const CoeffTensor& h);

}  // namespace wchaos
