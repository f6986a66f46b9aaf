#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "explora/common.hpp"
#include "explora/rng.hpp"

namespace explora {

// Synthetic objective on a native box domain, wrapped for maximization
// over the unit cube (all four problems are native minimization).
struct Benchmark {
  std::string name;
  int dim = 0;
  std::vector<double> native_lo, native_hi;
  std::function<double(const Point&)> native_minimize;
  double known_optimum = 0.0;  // maximization convention

  Point to_native(const Point& u) const {
    Point x(dim);
    for (int j = 0; j < dim; ++j) x[j] = native_lo[j] + u[j] * (native_hi[j] - native_lo[j]);
    return x;
  }

  Point to_unit(const Point& x) const {
    Point u(dim);
    for (int j = 0; j < dim; ++j) u[j] = (x[j] - native_lo[j]) / (native_hi[j] - native_lo[j]);
    return u;
  }

  double evaluate(const Point& u) const {
    if (static_cast<int>(u.size()) != dim) throw InputError("benchmark: dimension mismatch");
    for (double v : u)
      if (v < -1e-9 || v > 1.0 + 1e-9) throw InputError("benchmark: input outside unit cube");
    return -native_minimize(to_native(u));
  }
};

namespace benchdetail {

inline double branin(const Point& x) {
  const double pi = 3.14159265358979323846;
  double a = 1.0, b = 5.1 / (4.0 * pi * pi), c = 5.0 / pi, r = 6.0, s = 10.0,
         t = 1.0 / (8.0 * pi);
  double inner = x[1] - b * x[0] * x[0] + c * x[0] - r;
  return a * inner * inner + s * (1.0 - t) * std::cos(x[0]) + s;
}

inline double levy(const Point& x) {
  const double pi = 3.14159265358979323846;
  const int d = static_cast<int>(x.size());
  auto w = [&](int i) { return 1.0 + (x[i] - 1.0) / 4.0; };
  double s1 = std::sin(pi * w(0));
  double total = s1 * s1;
  for (int i = 0; i < d - 1; ++i) {
    double wi = w(i);
    double sw = std::sin(pi * wi + 1.0);
    total += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * sw * sw);
  }
  double wd = w(d - 1);
  double sd = std::sin(2.0 * pi * wd);
  total += (wd - 1.0) * (wd - 1.0) * (1.0 + sd * sd);
  return total;
}

inline double hartmann6(const Point& x) {
  static const double alpha[4] = {1.0, 1.2, 3.0, 3.2};
  static const double A[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                 {0.05, 10, 17, 0.1, 8, 14},
                                 {3, 3.5, 1.7, 10, 17, 8},
                                 {17, 8, 0.05, 10, 0.1, 14}};
  static const double P[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                 {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                 {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                 {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (int j = 0; j < 6; ++j) {
      double diff = x[j] - P[i][j];
      inner += A[i][j] * diff * diff;
    }
    total -= alpha[i] * std::exp(-inner);
  }
  return total;
}

inline double griewank(const Point& x) {
  double sum = 0.0, prod = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i] * x[i] / 4000.0;
    prod *= std::cos(x[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return sum - prod + 1.0;
}

}  // namespace benchdetail

inline Benchmark make_benchmark(const std::string& name) {
  Benchmark b;
  b.name = name;
  if (name == "branin2") {
    b.dim = 2;
    b.native_lo = {-5.0, 0.0};
    b.native_hi = {10.0, 15.0};
    b.native_minimize = benchdetail::branin;
    b.known_optimum = -0.39788735772973834;
  } else if (name == "levy4") {
    b.dim = 4;
    b.native_lo.assign(4, -10.0);
    b.native_hi.assign(4, 10.0);
    b.native_minimize = benchdetail::levy;
    b.known_optimum = 0.0;
  } else if (name == "hartmann6") {
    b.dim = 6;
    b.native_lo.assign(6, 0.0);
    b.native_hi.assign(6, 1.0);
    b.native_minimize = benchdetail::hartmann6;
    b.known_optimum = 3.3223680113913387;
  } else if (name == "griewank8") {
    b.dim = 8;
    b.native_lo.assign(8, -600.0);
    b.native_hi.assign(8, 600.0);
    b.native_minimize = benchdetail::griewank;
    b.known_optimum = 0.0;
  } else {
    throw InputError("unknown benchmark '" + name + "'");
  }
  return b;
}

inline std::vector<std::string> benchmark_names() {
  return {"branin2", "levy4", "hartmann6", "griewank8"};
}

// n uniform design points with their evaluations, deterministic in seed.
inline std::vector<std::pair<Point, double>> doe(const Benchmark& b, int n, Rng rng) {
  if (n < 1) throw InputError("doe: n must be >= 1");
  std::vector<std::pair<Point, double>> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Point u(b.dim);
    for (int j = 0; j < b.dim; ++j) u[j] = rng.uniform();
    double y = b.evaluate(u);
    out.emplace_back(std::move(u), y);
  }
  return out;
}

}  // namespace explora
