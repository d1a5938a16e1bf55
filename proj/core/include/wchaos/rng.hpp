#pragma once

// Deterministic pseudo-random inputs for the verification suites. The
// generator is SplitMix64 -- small, portable, and stated exactly so verify
// runs are reproducible across implementations:
//   state += 0x9E3779B97F4A7C15
//   z = state; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//   z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31
// Uniform doubles take the top 53 bits of z.

#include <cstdint>

#include "wchaos/chaos.hpp"
#include "wchaos/grid.hpp"
#include "wchaos/malliavin.hpp"

namespace wchaos {

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next();
  double uniform();    // [0, 1)
  double symmetric();  // [-1, 1)
};

// Dense tensor with coefficients uniform in [-1,1) (+ i[-1,1) if complex).
CoeffTensor random_tensor(SplitMix64& rng, const GridSpec& grid, int degree,
                          bool complex_entries);

// Degree-1 tensor; random_real_direction additionally guarantees a real,
// nonzero result (for field and key-inequality inputs).
CoeffTensor random_direction(SplitMix64& rng, const GridSpec& grid,
                             bool complex_entries);
CoeffTensor random_real_direction(SplitMix64& rng, const GridSpec& grid);

// Chaos element with one random tensor per degree 0..max_degree.
ChaosElement random_element(SplitMix64& rng, const GridSpec& grid, int max_degree,
                            bool complex_entries);

// Self-adjoint chaos element: (Y + Y*)/2 of a random element; every kernel is
// mirror symmetric exactly (bitwise).
ChaosElement random_self_adjoint(SplitMix64& rng, const GridSpec& grid,
                                 int max_degree);

// Bitensor with one random merged tensor per component (a,b),
// a <= max_left, b <= max_right.
ChaosBitensor random_bitensor(SplitMix64& rng, const GridSpec& grid, int max_left,
                              int max_right, bool complex_entries);

// Simple biprocess with random values (one bitensor per cell).
SimpleBiprocess random_biprocess(SplitMix64& rng, const GridSpec& grid,
                                 int max_left, int max_right, bool complex_entries);

// Adapted simple biprocess: cell i only carries coefficients whose index
// words use letters < i (so cell 0 is scalar (x) scalar only).
SimpleBiprocess random_adapted_biprocess(SplitMix64& rng, const GridSpec& grid,
                                         int max_left, int max_right,
                                         bool complex_entries);

}  // namespace wchaos
