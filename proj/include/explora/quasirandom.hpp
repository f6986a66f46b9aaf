#pragma once

#include <cmath>
#include <vector>

#include "explora/common.hpp"
#include "explora/rng.hpp"

namespace explora {

// Additive-recurrence (Kronecker) low-discrepancy sequence using the
// generalized golden ratio: phi_d is the root of x^{d+1} = x + 1, and the
// j-th coordinate steps by phi_d^{-(j+1)} mod 1.  A seeded random offset
// decorrelates independent uses.
class QuasiRandom {
 public:
  QuasiRandom(int dim, std::uint64_t seed) : dim_(dim), alpha_(dim), state_(dim) {
    if (dim < 1) throw InputError("QuasiRandom: dim must be >= 1");
    double phi = 2.0;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (dim + 1));
    double a = 1.0;
    Rng rng(seed);
    for (int j = 0; j < dim_; ++j) {
      a /= phi;
      alpha_[j] = a;
      state_[j] = rng.uniform();
    }
  }

  Point next() {
    Point x(dim_);
    for (int j = 0; j < dim_; ++j) {
      state_[j] += alpha_[j];
      if (state_[j] >= 1.0) state_[j] -= 1.0;
      x[j] = state_[j];
    }
    return x;
  }

  std::vector<Point> take(int n) {
    std::vector<Point> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(next());
    return out;
  }

 private:
  int dim_;
  std::vector<double> alpha_;
  std::vector<double> state_;
};

}  // namespace explora
