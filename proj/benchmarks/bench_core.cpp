// Microbenchmarks for the hot paths: Ito products, Fock representations,
// spectral measures, gradients, and the reduction operator.

#include <benchmark/benchmark.h>

#include "wchaos/chaos.hpp"
#include "wchaos/malliavin.hpp"
#include "wchaos/reduction.hpp"
#include "wchaos/rng.hpp"
#include "wchaos/spectra.hpp"

namespace {

using namespace wchaos;

const GridSpec kGrid{2.0, 3};

ChaosElement make_element(std::uint64_t seed, int max_degree) {
  SplitMix64 rng(seed);
  return random_element(rng, kGrid, max_degree, true);
}

void BM_ItoProduct(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const ChaosElement Y = make_element(11, degree);
  const ChaosElement Z = make_element(12, degree);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ito_product(Y, Z));
  }
}
BENCHMARK(BM_ItoProduct)->Arg(2)->Arg(3)->Arg(4);

void BM_MatrixRep(benchmark::State& state) {
  const int D = static_cast<int>(state.range(0));
  const ChaosElement Y = make_element(21, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(matrix_rep(Y, D));
  }
}
BENCHMARK(BM_MatrixRep)->Arg(4)->Arg(6);

void BM_SpectralMeasure(benchmark::State& state) {
  const int D = static_cast<int>(state.range(0));
  SplitMix64 rng(31);
  const ChaosElement Y = random_self_adjoint(rng, kGrid, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(vacuum_spectral_measure(Y, D));
  }
}
BENCHMARK(BM_SpectralMeasure)->Arg(4)->Arg(5);

void BM_DirectionalGradient(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const ChaosElement Y = make_element(41, degree);
  SplitMix64 rng(42);
  const CoeffTensor h = random_direction(rng, kGrid, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(directional_gradient(Y, h));
  }
}
BENCHMARK(BM_DirectionalGradient)->Arg(3)->Arg(4);

void BM_DeltaPh(benchmark::State& state) {
  const int degree = static_cast<int>(state.range(0));
  const ChaosElement Y = make_element(51, degree);
  const ChaosElement p = make_element(52, 2);
  SplitMix64 rng(53);
  const CoeffTensor h = random_direction(rng, kGrid, true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta_ph(p, h, Y));
  }
}
BENCHMARK(BM_DeltaPh)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
