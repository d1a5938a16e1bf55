#include "wchaos/reduction.hpp"

#include <cmath>
#include <stdexcept>

namespace wchaos {

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* op) {
  if (!(a == b)) throw std::invalid_argument(std::string(op) + ": grid mismatch");
}

}  // namespace

Complex tau_p(const ChaosElement& p, const ChaosElement& f) {
  require_same_grid(p.grid, f.grid, "tau_p");
  const int m = p.grid.cells;
  Complex total(0.0, 0.0);
  for (const auto& [n, pn] : p.degrees) {
    auto it = f.degrees.find(n);
    if (it == f.degrees.end()) continue;
    const CoeffTensor& fn = it->second;
    // tau(I_n(g) I_n(f)) = full contraction with reversed pairing, no
    // conjugation -- the degree-0 term of the Ito product.
    for (std::size_t idx = 0; idx < pn.c.size(); ++idx) {
      total += pn.c[idx] * fn.c[reversed_flat_index(idx, m, n)];
    }
  }
  return total;
}

ChaosElement delta_ph(const ChaosElement& p, const CoeffTensor& h,
                      const ChaosElement& Y) {
  require_same_grid(p.grid, Y.grid, "delta_ph");
  if (h.degree != 1) {
    throw std::invalid_argument("delta_ph: direction must have degree 1");
  }
  require_same_grid(Y.grid, h.grid, "delta_ph");

  const GridSpec& grid = Y.grid;
  const std::size_t m = static_cast<std::size_t>(grid.cells);
  ChaosElement out = chaos_zero(grid);
  for (const auto& [n, f] : Y.degrees) {
    for (int k = 1; k <= n; ++k) {
      auto pit = p.degrees.find(k - 1);
      if (pit == p.degrees.end()) continue;
      const CoeffTensor& pk = pit->second;
      const std::size_t sz_head = tensor_size(grid, k - 1);
      const std::size_t sz_tail = tensor_size(grid, n - k);
      // out[R] = sum_s conj(h_s) sum_J p_{k-1}[J] f_n[rev J, s, R]: the head
      // block of f carries p's index word reversed (tau of the Ito product),
      // slot k carries the gradient direction.
      CoeffTensor term = zero_tensor(grid, n - k);
      for (std::size_t head = 0; head < sz_head; ++head) {
        const Complex pv = pk.c[reversed_flat_index(head, grid.cells, k - 1)];
        if (pv == Complex(0.0, 0.0)) continue;
        for (std::size_t s = 0; s < m; ++s) {
          const Complex hv = std::conj(h.c[s]);
          if (hv == Complex(0.0, 0.0)) continue;
          const Complex weight = pv * hv;
          const std::size_t base = (head * m + s) * sz_tail;
          for (std::size_t tail = 0; tail < sz_tail; ++tail) {
            term.c[tail] += weight * f.c[base + tail];
          }
        }
      }
      out = out + chaos_from_tensor(term);
    }
  }
  return out;
}

ReductionReport iterate_reduction(const ChaosElement& Y,
                                  const std::vector<ReductionStep>& steps) {
  const std::optional<int> N = top_degree(Y);
  if (!N) {
    throw std::invalid_argument("iterate_reduction: zero element has no top degree");
  }
  if (static_cast<int>(steps.size()) != *N) {
    throw std::invalid_argument(
        "iterate_reduction: step count must equal the top degree");
  }

  ReductionReport report;
  ChaosElement current = Y;
  for (const ReductionStep& step : steps) {
    current = delta_ph(step.p, step.h, current);
    const std::optional<int> deg = top_degree(current);
    report.intermediate_top_degrees.push_back(deg ? *deg : -1);
  }
  report.final_scalar = trace(current);

  CoeffTensor h_word = scalar_tensor(Y.grid, Complex(1.0, 0.0));
  Complex tau_product(1.0, 0.0);
  for (const ReductionStep& step : steps) {
    h_word = tensor(h_word, step.h);
    tau_product *= trace(step.p);
  }
  report.predicted_scalar = tau_product * inner(component(Y, *N), h_word);

  report.abs_difference = std::abs(report.final_scalar - report.predicted_scalar);
  report.agrees = report.abs_difference <=
                  1e-10 * std::max(1.0, std::abs(report.predicted_scalar));
  return report;
}

ZeroDivisorReport zero_divisor_probe(const ChaosElement& Y, const ChaosElement& u) {
  require_same_grid(Y.grid, u.grid, "zero_divisor_probe");
  return ZeroDivisorReport{l2_norm(ito_product(Y, u)),
                           l2_norm(ito_product(adjoint(Y), u))};
}

KeyInequalityReport key_inequality_check(const ChaosElement& x, const ChaosElement& u,
                                         const ChaosElement& v, const ChaosElement& y1,
                                         const ChaosElement& y2, const CoeffTensor& h) {
  require_same_grid(x.grid, u.grid, "key_inequality_check");
  require_same_grid(x.grid, v.grid, "key_inequality_check");
  require_same_grid(x.grid, y1.grid, "key_inequality_check");
  require_same_grid(x.grid, y2.grid, "key_inequality_check");
  require_same_grid(x.grid, h.grid, "key_inequality_check");
  if (h.degree != 1) {
    throw std::invalid_argument("key_inequality_check: direction must have degree 1");
  }
  for (const Complex& value : h.c) {
    if (value.imag() != 0.0) {
      throw std::invalid_argument("key_inequality_check: direction must be real");
    }
  }

  const ChaosBitensor middle =
      bimodule_action(adjoint(v), directional_gradient(x, h), u);
  const double lhs = std::abs(bitensor_inner(middle, outer_bitensor(y1, y2)));

  const double xu = l2_norm(ito_product(x, u));
  const double xstar_v = l2_norm(ito_product(adjoint(x), v));
  const double rhs = 4.0 * l2_norm(h) *
                     (haagerup_bound(v) * xu + haagerup_bound(u) * xstar_v) *
                     haagerup_bound(y1) * haagerup_bound(y2);
  return KeyInequalityReport{lhs, rhs, lhs <= rhs + 1e-9};
}

}  // namespace wchaos
