#pragma once

#include <cstddef>

namespace nestquot {

/// Resource limits for jet truncations and fixed-point sweeps.
struct Bounds {
  std::size_t max_jet_dim = 3000;
  std::size_t max_fixed_points = 100000;

  /// Defaults overridden by NESTQUOT_MAX_JET_DIM / NESTQUOT_MAX_FIXED_POINTS
  /// when those variables hold positive integers.
  static Bounds from_environment();
};

}  // namespace nestquot
