#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace explora {

// A point in the normalized search space [0,1]^d (metrics also accept
// arbitrary coordinates for analysis-only paths).
using Point = std::vector<double>;

// Rejected input: bad arguments, malformed files, inconsistent dimensions.
// The CLI maps this to exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Valid input that this build does not support (e.g. OE for d > 50).
// Exit code 3.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Kernel matrix could not be factorized even after jitter escalation.
struct ModelFitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operation called on an object in the wrong state (e.g. unfitted model).
struct StateError : std::logic_error {
  using std::logic_error::logic_error;
};

// Axis-aligned box, used for acquisition maximization domains.
struct Bounds {
  std::vector<double> lo;
  std::vector<double> hi;

  static Bounds unit_cube(int dim) {
    Bounds b;
    b.lo.assign(static_cast<size_t>(dim), 0.0);
    b.hi.assign(static_cast<size_t>(dim), 1.0);
    return b;
  }

  int dim() const { return static_cast<int>(lo.size()); }

  void validate() const {
    if (lo.empty() || lo.size() != hi.size())
      throw InputError("bounds: empty or mismatched lo/hi");
    for (size_t j = 0; j < lo.size(); ++j)
      if (!(lo[j] < hi[j]) || lo[j] < 0.0 || hi[j] > 1.0)
        throw InputError("bounds: must be a non-empty sub-box of the unit cube");
  }

  bool contains(const Point& x) const {
    if (x.size() != lo.size()) return false;
    for (size_t j = 0; j < lo.size(); ++j)
      if (x[j] < lo[j] || x[j] > hi[j]) return false;
    return true;
  }
};

inline double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace explora
