#include "wchaos/rng.hpp"

namespace wchaos {

std::uint64_t SplitMix64::next() {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::symmetric() {
  return 2.0 * uniform() - 1.0;
}

CoeffTensor random_tensor(SplitMix64& rng, const GridSpec& grid, int degree,
                          bool complex_entries) {
  CoeffTensor t = zero_tensor(grid, degree);
  for (Complex& value : t.c) {
    const double re = rng.symmetric();
    const double im = complex_entries ? rng.symmetric() : 0.0;
    value = Complex(re, im);
  }
  return t;
}

CoeffTensor random_direction(SplitMix64& rng, const GridSpec& grid,
                             bool complex_entries) {
  return random_tensor(rng, grid, 1, complex_entries);
}

CoeffTensor random_real_direction(SplitMix64& rng, const GridSpec& grid) {
  for (;;) {
    CoeffTensor h = random_tensor(rng, grid, 1, false);
    if (!is_zero(h)) return h;
  }
}

ChaosElement random_element(SplitMix64& rng, const GridSpec& grid, int max_degree,
                            bool complex_entries) {
  ChaosElement Y = chaos_zero(grid);
  for (int n = 0; n <= max_degree; ++n) {
    Y = Y + chaos_from_tensor(random_tensor(rng, grid, n, complex_entries));
  }
  return Y;
}

ChaosElement random_self_adjoint(SplitMix64& rng, const GridSpec& grid,
                                 int max_degree) {
  const ChaosElement Y = random_element(rng, grid, max_degree, true);
  return Complex(0.5, 0.0) * (Y + adjoint(Y));
}

ChaosBitensor random_bitensor(SplitMix64& rng, const GridSpec& grid, int max_left,
                              int max_right, bool complex_entries) {
  ChaosBitensor U{grid, {}};
  for (int a = 0; a <= max_left; ++a) {
    for (int b = 0; b <= max_right; ++b) {
      CoeffTensor t = random_tensor(rng, grid, a + b, complex_entries);
      if (!is_zero(t)) U.components.emplace(std::make_pair(a, b), std::move(t));
    }
  }
  return U;
}

SimpleBiprocess random_biprocess(SplitMix64& rng, const GridSpec& grid,
                                 int max_left, int max_right, bool complex_entries) {
  SimpleBiprocess U{grid, {}};
  U.values.reserve(static_cast<std::size_t>(grid.cells));
  for (int i = 0; i < grid.cells; ++i) {
    U.values.push_back(random_bitensor(rng, grid, max_left, max_right, complex_entries));
  }
  return U;
}

SimpleBiprocess random_adapted_biprocess(SplitMix64& rng, const GridSpec& grid,
                                         int max_left, int max_right,
                                         bool complex_entries) {
  SimpleBiprocess U{grid, {}};
  U.values.reserve(static_cast<std::size_t>(grid.cells));
  for (int i = 0; i < grid.cells; ++i) {
    ChaosBitensor V{grid, {}};
    for (int a = 0; a <= max_left; ++a) {
      for (int b = 0; b <= max_right; ++b) {
        CoeffTensor t = zero_tensor(grid, a + b);
        for (std::size_t flat = 0; flat < t.c.size(); ++flat) {
          // Only keep coefficients whose full index word stays below cell i.
          std::size_t rest = flat;
          bool allowed = true;
          for (int slot = 0; slot < a + b; ++slot) {
            if (static_cast<int>(rest % static_cast<std::size_t>(grid.cells)) >= i) {
              allowed = false;
              break;
            }
            rest /= static_cast<std::size_t>(grid.cells);
          }
          if (!allowed) continue;
          const double re = rng.symmetric();
          const double im = complex_entries ? rng.symmetric() : 0.0;
          t.c[flat] = Complex(re, im);
        }
        if (!is_zero(t)) V.components.emplace(std::make_pair(a, b), t);
      }
    }
    U.values.push_back(std::move(V));
  }
  return U;
}

}  // namespace wchaos
