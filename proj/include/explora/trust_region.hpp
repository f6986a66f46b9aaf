#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "explora/common.hpp"

namespace explora {

inline constexpr double kTrLInit = 0.8;
inline constexpr double kTrLMin = 0.0078125;  // 2^-7
inline constexpr double kTrLMax = 1.6;
inline constexpr int kTrSuccessTol = 3;

inline int tr_failure_tol(int d, int q) { return (std::max(4, d) + q - 1) / q; }

struct TrustRegionState {
  double L = kTrLInit;
  int success_count = 0;
  int failure_count = 0;
  Point center;
};

// TuRBO update: double L after success_tol consecutive successes, halve
// after failure_tol consecutive failures; L < L_min restarts at L_init.
inline void tr_update(TrustRegionState& state, bool improved, int d, int q) {
  if (improved) {
    ++state.success_count;
    state.failure_count = 0;
  } else {
    ++state.failure_count;
    state.success_count = 0;
  }
  if (state.success_count >= kTrSuccessTol) {
    state.L = std::min(2.0 * state.L, kTrLMax);
    state.success_count = 0;
    state.failure_count = 0;
  } else if (state.failure_count >= tr_failure_tol(d, q)) {
    state.L *= 0.5;
    state.success_count = 0;
    state.failure_count = 0;
  }
  if (state.L < kTrLMin) {
    state.L = kTrLInit;
    state.success_count = 0;
    state.failure_count = 0;
  }
}

// Box of side L per dimension, scaled by normalized lengthscales
// (l_j / geometric mean), centered at the incumbent, clipped to [0,1]^d.
inline Bounds tr_bounds(const TrustRegionState& state, const std::vector<double>& lengthscales) {
  const int d = static_cast<int>(state.center.size());
  if (d == 0) throw StateError("tr_bounds: trust region has no center");
  double log_mean = 0.0;
  for (double l : lengthscales) log_mean += std::log(l);
  double geomean = std::exp(log_mean / d);
  Bounds box;
  box.lo.resize(d);
  box.hi.resize(d);
  for (int j = 0; j < d; ++j) {
    double side = std::max(state.L * lengthscales[j] / geomean, 1e-6);
    box.lo[j] = std::clamp(state.center[j] - 0.5 * side, 0.0, 1.0);
    box.hi[j] = std::clamp(state.center[j] + 0.5 * side, 0.0, 1.0);
    if (box.hi[j] - box.lo[j] < 1e-9) {
      box.lo[j] = std::clamp(box.lo[j] - 1e-6, 0.0, 1.0);
      box.hi[j] = std::clamp(box.hi[j] + 1e-6, 0.0, 1.0);
    }
  }
  return box;
}

}  // namespace explora
