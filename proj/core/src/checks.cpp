#include "wchaos/checks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "wchaos/chaos.hpp"
#include "wchaos/fock.hpp"
#include "wchaos/io.hpp"
#include "wchaos/malliavin.hpp"
#include "wchaos/reduction.hpp"
#include "wchaos/rng.hpp"
#include "wchaos/spectra.hpp"

namespace wchaos {

namespace {

struct Outcome {
  double residual = 0.0;
  double tolerance = 0.0;
};

double chaos_max_abs(const ChaosElement& Y) {
  double worst = 0.0;
  for (const auto& [n, f] : Y.degrees) worst = std::max(worst, max_abs(f));
  return worst;
}

double chaos_distance(const ChaosElement& Y, const ChaosElement& Z) {
  return chaos_max_abs(Y - Z);
}

double bitensor_max_abs(const ChaosBitensor& U) {
  double worst = 0.0;
  for (const auto& [key, t] : U.components) worst = std::max(worst, max_abs(t));
  return worst;
}

double bitensor_distance(const ChaosBitensor& U, const ChaosBitensor& V) {
  return bitensor_max_abs(U - V);
}

// Drives the suite: each check draws from its own generator, seeded from the
// run seed and the check's position, so results are order-stable and two runs
// with the same parameters agree bitwise.
class Suite {
 public:
  explicit Suite(const CheckParams& params) : params_(params) {}

  template <typename Fn>
  void run(const char* name, Fn&& fn) {
    SplitMix64 rng(params_.seed ^
                   (0x9E3779B97F4A7C15ULL *
                    static_cast<std::uint64_t>(results_.size() + 1)));
    const Outcome outcome = fn(rng);
    results_.push_back(CheckResult{name, outcome.residual <= outcome.tolerance,
                                   outcome.residual, outcome.tolerance});
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  CheckParams params_;
  std::vector<CheckResult> results_;
};

}  // namespace

std::vector<CheckResult> run_all_checks(const CheckParams& params) {
  const GridSpec grid = params.grid;
  const int deg = std::max(0, params.degree);
  const int trials = std::max(1, params.trials);
  Suite suite(params);

  // ---- grid ----

  suite.run("grid.inner-positive-definite", [&](SplitMix64& rng) {
    Outcome o{0.0, 0.0};
    for (int trial = 0; trial < trials; ++trial) {
      const int n = trial % (std::min(deg, 4) + 1);
      const CoeffTensor f = random_tensor(rng, grid, n, true);
      const Complex ip = inner(f, f);
      double r = std::abs(ip.imag()) + std::max(0.0, -ip.real());
      if (!is_zero(f) && !(ip.real() > 0.0)) r += 1.0;
      o.residual = std::max(o.residual, r);
    }
    return o;
  });

  suite.run("grid.involution-involutive", [&](SplitMix64& rng) {
    Outcome o{0.0, 0.0};
    for (int trial = 0; trial < trials; ++trial) {
      const int n = trial % (std::min(deg, 4) + 1);
      const CoeffTensor f = random_tensor(rng, grid, n, true);
      o.residual = std::max(o.residual, max_abs(involution(involution(f)) - f));
    }
    return o;
  });

  suite.run("grid.contract-zero-bilinear", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-12};
    for (int trial = 0; trial < trials; ++trial) {
      const int n = trial % 3;
      const int k = (trial / 3) % 3;
      const CoeffTensor f = random_tensor(rng, grid, n, true);
      const CoeffTensor f2 = random_tensor(rng, grid, n, true);
      const CoeffTensor g = random_tensor(rng, grid, k, true);
      const CoeffTensor g2 = random_tensor(rng, grid, k, true);
      const CoeffTensor w = random_tensor(rng, grid, n + k, true);
      const Complex alpha(rng.symmetric(), rng.symmetric());
      const Complex lhs_f = inner(contract_p(alpha * f + f2, g, 0), w) -
                            alpha * inner(contract_p(f, g, 0), w) -
                            inner(contract_p(f2, g, 0), w);
      const Complex lhs_g = inner(contract_p(f, alpha * g + g2, 0), w) -
                            alpha * inner(contract_p(f, g, 0), w) -
                            inner(contract_p(f, g2, 0), w);
      o.residual = std::max(o.residual, std::abs(lhs_f) + std::abs(lhs_g));
    }
    return o;
  });

  suite.run("grid.involution-isometry", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-12};
    for (int trial = 0; trial < trials; ++trial) {
      const int n = trial % (std::min(deg, 4) + 1);
      const CoeffTensor f = random_tensor(rng, grid, n, true);
      o.residual =
          std::max(o.residual, std::abs(l2_norm(involution(f)) - l2_norm(f)));
    }
    return o;
  });

  suite.run("grid.full-contraction-pairing", [&](SplitMix64& rng) {
    const GridSpec small{grid.horizon, std::min(grid.cells, 3)};
    Outcome o{0.0, 1e-12};
    for (int trial = 0; trial < trials; ++trial) {
      const int n = 1 + trial % 3;
      const CoeffTensor f = random_tensor(rng, small, n, true);
      const CoeffTensor g = random_tensor(rng, small, n, true);
      Complex brute(0.0, 0.0);
      for (std::size_t idx = 0; idx < f.c.size(); ++idx) {
        brute += f.c[idx] * g.c[reversed_flat_index(idx, small.cells, n)];
      }
      const CoeffTensor full = contract_p(f, g, n);
      o.residual = std::max(o.residual, std::abs(full.c[0] - brute));
    }
    return o;
  });

  // ---- fock ----

  suite.run("fock.ladder-adjoint", [&](SplitMix64& rng) {
    const FockBasis basis = enumerate_basis(grid, std::min(deg + 1, 4));
    Outcome o{0.0, 0.0};
    for (int trial = 0; trial < std::min(trials, 10); ++trial) {
      const CoeffTensor h = random_direction(rng, grid, true);
      const OperatorMatrix create = ladder_matrix(basis, h, LadderKind::create);
      const OperatorMatrix annih = ladder_matrix(basis, h, LadderKind::annihilate);
      o.residual = std::max(
          o.residual,
          (annih.entries - create.entries.adjoint()).cwiseAbs().maxCoeff());
    }
    return o;
  });

  suite.run("fock.field-self-adjoint", [&](SplitMix64& rng) {
    const FockBasis basis = enumerate_basis(grid, std::min(deg + 1, 4));
    Outcome o{0.0, 0.0};
    for (int trial = 0; trial < std::min(trials, 10); ++trial) {
      const CoeffTensor h = random_real_direction(rng, grid);
      const OperatorMatrix X = field_matrix(basis, h);
      o.residual = std::max(
          o.residual, (X.entries - X.entries.adjoint()).cwiseAbs().maxCoeff());
    }
    return o;
  });

  suite.run("fock.wick-vacuum", [&](SplitMix64& rng) {
    const int D = std::min(deg + 1, 4);
    const FockBasis basis = enumerate_basis(grid, D);
    Outcome o{0.0, 1e-12};
    for (int trial = 0; trial < std::min(trials, 15); ++trial) {
      const int length = trial % (D + 1);
      std::vector<int> word(static_cast<std::size_t>(length));
      for (int& letter : word) {
        letter = static_cast<int>(rng.next() % static_cast<std::uint64_t>(grid.cells));
      }
      const OperatorMatrix W = wick_matrix(basis, word);
      Eigen::VectorXcd expect =
          Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension()));
      expect(static_cast<Eigen::Index>(basis.index_of(word))) = Complex(1.0, 0.0);
      o.residual =
          std::max(o.residual, (W.entries.col(0) - expect).cwiseAbs().maxCoeff());
    }
    return o;
  });

  suite.run("fock.field-spectrum", [&](SplitMix64&) {
    // Pinned geometry: m = 1, unit horizon, unit direction. The truncated
    // free field is the (D+1)-point Jacobi matrix with eigenvalues
    // 2 cos(k pi / (D+2)) and vacuum weights (2/(D+2)) sin^2(k pi / (D+2)).
    const GridSpec line{1.0, 1};
    const int D = std::max(3, std::min(deg + 2, 9));
    const SpectralMeasure mu = vacuum_spectral_measure(free_bm(line, 1.0), D);
    Outcome o{0.0, 1e-10};
    if (mu.points.size() != static_cast<std::size_t>(D) + 1) {
      o.residual = 1.0;
      return o;
    }
    const double pi = std::acos(-1.0);
    for (std::size_t j = 0; j < mu.points.size(); ++j) {
      const int k = D + 1 - static_cast<int>(j);  // ascending eigenvalues
      const double angle = k * pi / (D + 2);
      const double value = 2.0 * std::cos(angle);
      const double weight = 2.0 / (D + 2) * std::sin(angle) * std::sin(angle);
      o.residual = std::max(o.residual,
                            std::abs(mu.points[j].eigenvalue - value) +
                                std::abs(mu.points[j].weight - weight));
    }
    return o;
  });

  suite.run("fock.norm-monotone", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    for (int trial = 0; trial < std::min(trials, 6); ++trial) {
      const ChaosElement Y = random_self_adjoint(rng, grid, std::min(deg, 3));
      const int top = top_degree(Y).value_or(0);
      double previous = -1.0;
      for (int D = top; D <= top + 3; ++D) {
        const double estimate = operator_norm_estimate(matrix_rep(Y, D));
        if (previous >= 0.0) {
          o.residual = std::max(o.residual, previous - estimate);
        }
        previous = estimate;
      }
    }
    return o;
  });

  // ---- wigner chaos ----

  suite.run("chaos.ito-associative", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    for (int trial = 0; trial < trials; ++trial) {
      const int cap = std::min(deg, 3);
      const ChaosElement A = random_element(rng, grid, cap, true);
      const ChaosElement B = random_element(rng, grid, cap, true);
      const ChaosElement C = random_element(rng, grid, cap, true);
      o.residual = std::max(o.residual,
                            chaos_distance(ito_product(ito_product(A, B), C),
                                           ito_product(A, ito_product(B, C))));
    }
    return o;
  });

  suite.run("chaos.rep-faithful", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    for (int trial = 0; trial < std::min(trials, 15); ++trial) {
      const ChaosElement Y = random_element(rng, grid, 2, true);
      const ChaosElement Z = random_element(rng, grid, 2, true);
      const int D = top_degree(Y).value_or(0) + top_degree(Z).value_or(0);
      const OperatorMatrix A = matrix_rep(Y, D);
      const OperatorMatrix B = matrix_rep(Z, D);
      const Eigen::VectorXcd omega_column = A.entries * B.entries.col(0);
      const FockVector expect = chaos_vector(ito_product(Y, Z), A.basis);
      o.residual = std::max(
          o.residual, (omega_column - expect.coefficients).cwiseAbs().maxCoeff());
    }
    return o;
  });

  suite.run("chaos.haagerup-bound", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-9};
    for (int trial = 0; trial < std::min(trials, 9); ++trial) {
      const int n = 1 + trial % 3;
      const CoeffTensor f = random_tensor(rng, grid, n, true);
      const ChaosElement Y = chaos_from_tensor(f);
      const double bound = (n + 1) * l2_norm(f);
      for (int D : {n - 1, n, n + 2, 6}) {
        if (D < 0) continue;
        const double estimate = operator_norm_estimate(matrix_rep(Y, D));
        o.residual = std::max(o.residual, estimate - bound);
      }
    }
    return o;
  });

  suite.run("chaos.ito-isometry", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-12};
    for (int trial = 0; trial < trials; ++trial) {
      const int n = trial % (std::min(deg, 4) + 1);
      const CoeffTensor f = random_tensor(rng, grid, n, true);
      const CoeffTensor g = random_tensor(rng, grid, n, true);
      const Complex lhs =
          trace(ito_product(adjoint(chaos_from_tensor(f)), chaos_from_tensor(g)));
      o.residual = std::max(o.residual, std::abs(lhs - inner(g, f)));
    }
    return o;
  });

  suite.run("chaos.freeness-abab", [&](SplitMix64&) {
    const GridSpec wide{grid.horizon, std::max(grid.cells, 2)};
    const ChaosElement a = chaos_from_tensor(basis_vector(wide, 0));
    const ChaosElement b = chaos_from_tensor(basis_vector(wide, 1));
    const ChaosElement word =
        ito_product(ito_product(ito_product(a, b), a), b);
    return Outcome{std::abs(trace(word)), 1e-12};
  });

  suite.run("chaos.semicircle-moments", [&](SplitMix64&) {
    Outcome o{0.0, 1e-10};
    const int mid = (grid.cells + 1) / 2;
    for (double t : {grid.horizon, grid.horizon * mid / grid.cells}) {
      const ChaosElement S = free_bm(grid, t);
      for (int k = 1; k <= 8; ++k) {
        o.residual = std::max(
            o.residual, std::abs(moment(S, k) - Complex(semicircle_reference(t, k), 0.0)));
      }
    }
    return o;
  });

  // ---- malliavin ----

  suite.run("malliavin.leibniz", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    const ChaosElement one = chaos_one(grid);
    for (int trial = 0; trial < trials; ++trial) {
      const int cap = std::min(deg, 3);
      const ChaosElement Y = random_element(rng, grid, cap, true);
      const ChaosElement Z = random_element(rng, grid, cap, true);
      const CoeffTensor h = random_direction(rng, grid, true);
      const ChaosBitensor lhs = directional_gradient(ito_product(Y, Z), h);
      const ChaosBitensor rhs =
          bimodule_action(one, directional_gradient(Y, h), Z) +
          bimodule_action(Y, directional_gradient(Z, h), one);
      o.residual = std::max(o.residual, bitensor_distance(lhs, rhs));
    }
    return o;
  });

  suite.run("malliavin.coassociativity", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 3), true);
      const CoeffTensor h1 = random_real_direction(rng, grid);
      const CoeffTensor h2 = random_real_direction(rng, grid);
      const ChaosTritensor lhs =
          gradient_left_leg(directional_gradient(Y, h2), h1);
      const ChaosTritensor rhs =
          gradient_right_leg(directional_gradient(Y, h1), h2);
      o.residual = std::max(o.residual, tritensor_distance(lhs, rhs));
    }
    return o;
  });

  suite.run("malliavin.adjointness", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 3), true);
      const ChaosBitensor U = random_bitensor(rng, grid, 2, 2, true);
      const CoeffTensor h = random_direction(rng, grid, true);
      const Complex lhs = bitensor_inner(directional_gradient(Y, h), U);
      const Complex rhs = l2_inner(Y, directional_divergence(U, h));
      o.residual = std::max(o.residual, std::abs(lhs - rhs));
    }
    return o;
  });

  suite.run("malliavin.voiculescu-left", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    const ChaosElement one = chaos_one(grid);
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 3), true);
      const CoeffTensor h = random_real_direction(rng, grid);
      const ChaosElement lhs = directional_divergence(outer_bitensor(Y, one), h);
      const ChaosElement rhs =
          ito_product(Y, chaos_from_tensor(h)) -
          partial_trace(directional_gradient(Y, h), TraceSide::right);
      o.residual = std::max(o.residual, chaos_distance(lhs, rhs));
    }
    return o;
  });

  suite.run("malliavin.voiculescu-right", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    const ChaosElement one = chaos_one(grid);
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 3), true);
      const CoeffTensor h = random_real_direction(rng, grid);
      const ChaosElement lhs = directional_divergence(outer_bitensor(one, Y), h);
      const ChaosElement rhs =
          ito_product(chaos_from_tensor(h), Y) -
          partial_trace(directional_gradient(Y, h), TraceSide::left);
      o.residual = std::max(o.residual, chaos_distance(lhs, rhs));
    }
    return o;
  });

  suite.run("malliavin.dabrowski-sharp", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    const ChaosElement one = chaos_one(grid);
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 3), true);
      const CoeffTensor h = random_real_direction(rng, grid);
      const double div_norm =
          l2_norm(directional_divergence(outer_bitensor(Y, one), h));
      const double sharp = l2_norm(h) * l2_norm(Y);
      const double trace_norm =
          l2_norm(partial_trace(directional_gradient(Y, h), TraceSide::right));
      o.residual = std::max(o.residual, std::abs(div_norm - sharp));
      o.residual = std::max(o.residual, trace_norm - sharp);
    }
    return o;
  });

  suite.run("malliavin.dabrowski-operator", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    const ChaosElement one = chaos_one(grid);
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 3), true);
      const CoeffTensor h = random_real_direction(rng, grid);
      const double bound = l2_norm(h) * haagerup_bound(Y);
      const double div_norm =
          l2_norm(directional_divergence(outer_bitensor(Y, one), h));
      const double trace_norm =
          l2_norm(partial_trace(directional_gradient(Y, h), TraceSide::right));
      o.residual = std::max(o.residual, div_norm - bound);
      o.residual = std::max(o.residual, trace_norm - 2.0 * bound);
    }
    return o;
  });

  suite.run("malliavin.t-formula", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    const ChaosElement one = chaos_one(grid);
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 3), true);
      const CoeffTensor h = random_real_direction(rng, grid);
      const double lhs =
          l2_norm(directional_divergence(outer_bitensor(Y, one), h));
      const ChaosElement YstarY = ito_product(adjoint(Y), Y);
      const Complex rhs =
          l2_inner(directional_divergence(outer_bitensor(YstarY, one), h),
                   chaos_from_tensor(h));
      o.residual = std::max(o.residual, std::abs(Complex(lhs * lhs, 0.0) - rhs));
    }
    return o;
  });

  suite.run("malliavin.gradient-energy", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 4), true);
      double energy = 0.0;
      for (int i = 0; i < grid.cells; ++i) {
        const double nrm =
            bitensor_norm(directional_gradient(Y, basis_vector(grid, i)));
        energy += nrm * nrm;
      }
      double expect = 0.0;
      for (const auto& [n, f] : Y.degrees) {
        const double nrm = l2_norm(f);
        expect += n * nrm * nrm;
      }
      o.residual = std::max(o.residual, std::abs(energy - expect));
    }
    return o;
  });

  suite.run("malliavin.number-operator", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-12};
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 4), true);
      o.residual = std::max(
          o.residual, chaos_distance(divergence_simple(gradient_biprocess(Y)),
                                     number_operator(Y)));
    }
    return o;
  });

  suite.run("malliavin.reality", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 3), true);
      const CoeffTensor e = random_real_direction(rng, grid);
      o.residual = std::max(
          o.residual, bitensor_distance(directional_gradient(adjoint(Y), e),
                                        dagger(directional_gradient(Y, e))));
    }
    return o;
  });

  suite.run("malliavin.ito-isometry-biprocess", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    for (int trial = 0; trial < std::min(trials, 15); ++trial) {
      const SimpleBiprocess U = random_adapted_biprocess(rng, grid, 2, 2, true);
      const ChaosElement integral = stochastic_integral(U);
      o.residual =
          std::max(o.residual, std::abs(l2_norm(integral) - b2_norm(U)));
      o.residual =
          std::max(o.residual, chaos_distance(integral, divergence_simple(U)));
    }
    return o;
  });

  suite.run("malliavin.pairing-reproduces-gradient", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-12};
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 3), true);
      const CoeffTensor h = random_direction(rng, grid, true);
      o.residual = std::max(
          o.residual,
          bitensor_distance(biprocess_pair(gradient_biprocess(Y), h),
                            directional_gradient(Y, h)));
    }
    return o;
  });

  // ---- reduction ----

  suite.run("reduction.degree-reduction", [&](SplitMix64& rng) {
    Outcome o{0.0, 0.0};
    for (int trial = 0; trial < trials; ++trial) {
      const int top = 1 + trial % std::max(1, std::min(deg, 3));
      const ChaosElement Y = random_element(rng, grid, top, true);
      const ChaosElement p = random_element(rng, grid, 2, true);
      const CoeffTensor h = random_direction(rng, grid, true);
      const ChaosElement reduced = delta_ph(p, h, Y);
      const int top_after = top_degree(reduced).value_or(-1);
      if (top_after > top_degree(Y).value_or(0) - 1) o.residual += 1.0;
    }
    return o;
  });

  suite.run("reduction.delta-linearity", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-12};
    for (int trial = 0; trial < trials; ++trial) {
      const int cap = std::min(deg, 3);
      const ChaosElement Y = random_element(rng, grid, cap, true);
      const ChaosElement Y2 = random_element(rng, grid, cap, true);
      const ChaosElement p = random_element(rng, grid, 2, true);
      const ChaosElement p2 = random_element(rng, grid, 2, true);
      const CoeffTensor h = random_direction(rng, grid, true);
      const CoeffTensor h2 = random_direction(rng, grid, true);
      const Complex alpha(rng.symmetric(), rng.symmetric());

      const double in_p = chaos_distance(
          delta_ph(alpha * p + p2, h, Y),
          alpha * delta_ph(p, h, Y) + delta_ph(p2, h, Y));
      const double in_h = chaos_distance(
          delta_ph(p, alpha * h + h2, Y),
          std::conj(alpha) * delta_ph(p, h, Y) + delta_ph(p, h2, Y));
      const double in_y = chaos_distance(
          delta_ph(p, h, alpha * Y + Y2),
          alpha * delta_ph(p, h, Y) + delta_ph(p, h, Y2));
      o.residual = std::max({o.residual, in_p, in_h, in_y});
    }
    return o;
  });

  suite.run("reduction.coefficient-extraction", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    for (int trial = 0; trial < trials; ++trial) {
      const int top = 1 + trial % std::max(1, std::min(deg, 4));
      const ChaosElement Y = random_element(rng, grid, top, true);
      std::vector<ReductionStep> steps;
      for (int i = 0; i < top; ++i) {
        steps.push_back(ReductionStep{random_self_adjoint(rng, grid, 2),
                                      random_real_direction(rng, grid)});
      }
      const ReductionReport report = iterate_reduction(Y, steps);
      o.residual = std::max(
          o.residual, report.abs_difference /
                          std::max(1.0, std::abs(report.predicted_scalar)));
    }
    return o;
  });

  suite.run("reduction.malliavin-consistency", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-12};
    const ChaosElement one = chaos_one(grid);
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 3), true);
      const ChaosElement p = random_element(rng, grid, 2, true);
      const CoeffTensor h = random_direction(rng, grid, true);
      const ChaosElement direct = delta_ph(p, h, Y);
      const ChaosElement composed = partial_trace(
          bimodule_action(p, directional_gradient(Y, h), one), TraceSide::left);
      o.residual = std::max(o.residual, chaos_distance(direct, composed));
    }
    return o;
  });

  suite.run("reduction.key-inequality", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-9};
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement x = random_element(rng, grid, 2, true);
      const ChaosElement u = random_element(rng, grid, 2, true);
      const ChaosElement v = random_element(rng, grid, 2, true);
      const ChaosElement y1 = random_element(rng, grid, 2, true);
      const ChaosElement y2 = random_element(rng, grid, 2, true);
      const CoeffTensor h = random_real_direction(rng, grid);
      const KeyInequalityReport report = key_inequality_check(x, u, v, y1, y2, h);
      o.residual = std::max(o.residual, report.lhs - report.rhs);
    }
    return o;
  });

  suite.run("reduction.kernel-survival", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-12};
    const ChaosElement zero = chaos_zero(grid);
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement x =
          Complex(1e-6, 0.0) * random_element(rng, grid, 2, true);
      const ChaosElement u = random_element(rng, grid, 2, true);
      const ChaosElement v = random_element(rng, grid, 2, true);
      ChaosElement y1 = random_element(rng, grid, 2, true);
      ChaosElement y2 = random_element(rng, grid, 2, true);
      y1 = Complex(1.0 / l2_norm(y1), 0.0) * y1;
      y2 = Complex(1.0 / l2_norm(y2), 0.0) * y2;
      const CoeffTensor h = random_real_direction(rng, grid);

      // Quantitative survival: the pairing dies at the rate of the kernel
      // residuals ||xu||, ||x*v||.
      const KeyInequalityReport near = key_inequality_check(x, u, v, y1, y2, h);
      const double eps = std::max(l2_norm(ito_product(x, u)),
                                  l2_norm(ito_product(adjoint(x), v)));
      const double bound = 8.0 * l2_norm(h) *
                           std::max(haagerup_bound(u), haagerup_bound(v)) *
                           haagerup_bound(y1) * haagerup_bound(y2) * eps;
      o.residual = std::max(o.residual, near.lhs - bound);

      // Exact kernel: u = v = 0 forces the pairing to vanish outright.
      const KeyInequalityReport exact =
          key_inequality_check(x, zero, zero, y1, y2, h);
      o.residual = std::max(o.residual, exact.lhs);
    }
    return o;
  });

  suite.run("reduction.zero-divisor-probe", [&](SplitMix64& rng) {
    Outcome o{0.0, 0.0};
    double min_norm = -1.0;
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 3), true);
      const ChaosElement u = random_element(rng, grid, std::min(deg, 3), true);
      if (is_zero(Y) || is_zero(u)) continue;
      const ZeroDivisorReport report = zero_divisor_probe(Y, u);
      min_norm = min_norm < 0.0 ? report.norm_Yu : std::min(min_norm, report.norm_Yu);
    }
    o.residual = std::max(0.0, 1e-8 - min_norm);
    return o;
  });

  // ---- spectra ----

  suite.run("spectra.weights-sum", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-10};
    for (int trial = 0; trial < std::min(trials, 10); ++trial) {
      const ChaosElement Y = random_self_adjoint(rng, grid, 2);
      const SpectralMeasure mu =
          vacuum_spectral_measure(Y, 2 * top_degree(Y).value_or(0));
      double total = 0.0;
      double negative = 0.0;
      for (const SpectralPoint& pt : mu.points) {
        total += pt.weight;
        negative = std::max(negative, -pt.weight);
      }
      o.residual = std::max(o.residual, std::abs(total - 1.0) + negative);
    }
    return o;
  });

  suite.run("spectra.low-moments", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-9};
    for (int trial = 0; trial < std::min(trials, 10); ++trial) {
      const ChaosElement Y = random_self_adjoint(rng, grid, 2);
      const SpectralMeasure mu =
          vacuum_spectral_measure(Y, 2 * top_degree(Y).value_or(0));
      o.residual = std::max(
          o.residual, std::abs(measure_moment(mu, 1) - trace(Y).real()));
      o.residual = std::max(
          o.residual, std::abs(measure_moment(mu, 2) - moment(Y, 2).real()));
    }
    return o;
  });

  suite.run("spectra.truncation-window", [&](SplitMix64& rng) {
    Outcome o{0.0, 1e-8};
    for (int trial = 0; trial < std::min(trials, 6); ++trial) {
      const ChaosElement Y = random_self_adjoint(rng, grid, 2);
      const int top = top_degree(Y).value_or(0);
      const int D = std::max(top, 2 * top);
      for (const MomentCompareRow& row : moment_compare(Y, D, 6)) {
        if (row.guaranteed) o.residual = std::max(o.residual, row.abs_error);
      }
    }
    return o;
  });

  suite.run("spectra.semicircle-window", [&](SplitMix64&) {
    Outcome o{0.0, 1e-8};
    const ChaosElement S = free_bm(grid, grid.horizon);
    const int D = 6;
    const SpectralMeasure mu = vacuum_spectral_measure(S, D);
    for (int k = 0; k <= D; ++k) {
      o.residual = std::max(o.residual,
                            std::abs(measure_moment(mu, k) -
                                     semicircle_reference(grid.horizon, k)));
    }
    return o;
  });

  // ---- io ----

  suite.run("io.round-trip", [&](SplitMix64& rng) {
    Outcome o{0.0, 0.0};
    for (int trial = 0; trial < trials; ++trial) {
      const ChaosElement Y = random_element(rng, grid, std::min(deg, 3), true);
      const std::string text = emit_chaos_json(Y);
      const ChaosElement Z = parse_chaos_json(text);
      if (emit_chaos_json(Z) != text) o.residual += 1.0;
      o.residual = std::max(o.residual, chaos_distance(Y, Z));
    }
    return o;
  });

  return suite.take();
}

}  // namespace wchaos
