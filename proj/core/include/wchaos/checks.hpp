#pragma once

// The verification suite: every module invariant and property expressed as a
// seeded, deterministic numerical check with a measured residual and a pinned
// tolerance.

#include <cstdint>
#include <string>
#include <vector>

#include "wchaos/grid.hpp"

namespace wchaos {

struct CheckParams {
  GridSpec grid{2.0, 2};
  int degree = 3;  // degree budget for random elements (clamped per check)
  std::uint64_t seed = 1;
  int trials = 25;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;   // measured worst-case deviation over all trials
  double tolerance = 0.0;  // pinned bound; pass iff residual <= tolerance
};

// Run the full suite in a fixed order. Deterministic: identical params give
// identical results. Some checks use dedicated small grids (noted by name)
// where the property pins the geometry, e.g. the m=1 field spectrum.
std::vector<CheckResult> run_all_checks(const CheckParams& params);

}  // namespace wchaos
