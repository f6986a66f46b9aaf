#pragma once

#include <cmath>
#include <vector>

#include "explora/common.hpp"

namespace explora {

inline constexpr double kLengthscaleLo = 1e-3;
inline constexpr double kLengthscaleHi = 1e3;
inline constexpr double kNoiseFloor = 1e-6;

struct KernelParams {
  std::vector<double> lengthscales;
  double signal_variance = 1.0;
  double noise_variance = kNoiseFloor;

  void validate() const {
    for (double l : lengthscales)
      if (!(l >= kLengthscaleLo && l <= kLengthscaleHi))
        throw InputError("KernelParams: lengthscale out of [1e-3, 1e3]");
    if (!(signal_variance > 0.0)) throw InputError("KernelParams: signal_variance <= 0");
    if (!(noise_variance >= kNoiseFloor)) throw InputError("KernelParams: noise below floor");
  }
};

inline double matern52_of_r(double r, double signal_variance) {
  const double sqrt5 = 2.2360679774997896964;
  double sr = sqrt5 * r;
  return signal_variance * (1.0 + sr + sr * sr / 3.0) * std::exp(-sr);
}

// Matérn-5/2 ARD: sigma^2 (1 + sqrt(5) r + 5 r^2 / 3) exp(-sqrt(5) r),
// r^2 = sum_j ((x_j - x'_j) / l_j)^2.
inline double kernel(const Point& x, const Point& xp, const KernelParams& params) {
  if (x.size() != xp.size() || x.size() != params.lengthscales.size())
    throw InputError("kernel: dimension mismatch");
  double r2 = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!std::isfinite(x[j]) || !std::isfinite(xp[j]))
      throw InputError("kernel: non-finite input");
    double s = (x[j] - xp[j]) / params.lengthscales[j];
    r2 += s * s;
  }
  return matern52_of_r(std::sqrt(r2), params.signal_variance);
}

}  // namespace explora
