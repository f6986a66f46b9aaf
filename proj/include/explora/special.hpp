#pragma once

#include <cmath>

#include "explora/common.hpp"

namespace explora {

// Digamma via upward recurrence to x >= 10, then the asymptotic series
// psi(x) ~ ln x - 1/(2x) - sum B_{2n}/(2n x^{2n}).
inline double digamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw InputError("digamma: non-positive integer");
  double result = 0.0;
  if (x < 0.0) {
    // reflection: psi(1-x) = psi(x) + pi*cot(pi*x)
    const double pi = 3.14159265358979323846;
    return digamma(1.0 - x) - pi / std::tan(pi * x);
  }
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  double inv = 1.0 / x;
  double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv;
  // B2/2=1/12, B4/4=-1/120, B6/6=1/252, B8/8=-1/240, B10/10=1/132
  result -= inv2 * (1.0 / 12.0 -
                    inv2 * (1.0 / 120.0 -
                            inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
  return result;
}

// log volume of the d-dimensional unit ball: (d/2) ln pi - ln Gamma(1 + d/2)
inline double log_unit_ball_volume(int d) {
  if (d < 1) throw InputError("log_unit_ball_volume: d must be >= 1");
  const double pi = 3.14159265358979323846;
  return 0.5 * d * std::log(pi) - std::lgamma(1.0 + 0.5 * d);
}

}  // namespace explora
