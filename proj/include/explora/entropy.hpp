#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "explora/common.hpp"
#include "explora/otsd.hpp"
#include "explora/special.hpp"
#include "explora/trace.hpp"

namespace explora {

inline constexpr double kOeDistanceFloor = 1e-12;
inline constexpr int kOeMaxDim = 50;

inline int oe_k_schedule(int t) { return std::max(1, static_cast<int>(std::lround(std::log(t)))); }

// Kozachenko-Leonenko estimate over t points:
//   (d/t) sum_i log(eps_i^k) + psi(t) - psi(k) + log V_d
// where eps_i^k is the distance from x_i to its k-th nearest neighbor,
// floored at 1e-12.
inline double oe(const std::vector<Point>& pts, int k) {
  const int t = static_cast<int>(pts.size());
  if (t < 2) throw InputError("oe: need at least 2 points");
  if (k < 1 || k > t - 1) throw InputError("oe: k out of range");
  const int d = static_cast<int>(pts[0].size());
  if (d > kOeMaxDim) throw UnsupportedError("oe: d > 50 not supported");
  double sum_log = 0.0;
  std::vector<double> dist(t - 1);
  for (int i = 0; i < t; ++i) {
    int m = 0;
    for (int j = 0; j < t; ++j)
      if (j != i) dist[m++] = euclidean(pts[i], pts[j]);
    std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
    sum_log += std::log(std::max(dist[k - 1], kOeDistanceFloor));
  }
  return (static_cast<double>(d) / t) * sum_log + digamma(t) - digamma(k) +
         log_unit_ball_volume(d);
}

// Incremental series: values[t] = oe(X_t, k = max(1, round(ln t))) for
// t = 3..T.  Each point keeps a sorted array of its K_max smallest
// neighbor distances, updated in O(K) per arrival; total cost O(dT^2).
inline MetricSeries oe_series(const std::vector<Point>& pts) {
  const int T = static_cast<int>(pts.size());
  if (T < 3) throw InputError("oe_series: need at least 3 points");
  const int d = static_cast<int>(pts[0].size());
  if (d > kOeMaxDim) throw UnsupportedError("oe_series: d > 50 not supported");
  const int k_max = oe_k_schedule(T);
  std::vector<std::vector<double>> nearest(T);  // per-point sorted k_max smallest
  auto insert_sorted = [k_max](std::vector<double>& row, double v) {
    auto it = std::upper_bound(row.begin(), row.end(), v);
    if (row.size() < static_cast<std::size_t>(k_max)) {
      row.insert(it, v);
    } else if (it != row.end()) {
      row.insert(it, v);
      row.pop_back();
    }
  };
  MetricSeries series;
  series.t0 = 3;
  const double log_vd = log_unit_ball_volume(d);
  for (int t = 1; t <= T; ++t) {
    const int idx = t - 1;
    nearest[idx].reserve(k_max + 1);
    for (int j = 0; j < idx; ++j) {
      double dist = euclidean(pts[idx], pts[j]);
      insert_sorted(nearest[j], dist);
      insert_sorted(nearest[idx], dist);
    }
    if (t < 3) continue;
    const int k = oe_k_schedule(t);
    double sum_log = 0.0;
    for (int i = 0; i < t; ++i)
      sum_log += std::log(std::max(nearest[i][k - 1], kOeDistanceFloor));
    series.values.push_back((static_cast<double>(d) / t) * sum_log + digamma(t) - digamma(k) +
                            log_vd);
  }
  return series;
}

inline MetricSeries oe_series(const ObservationTrace& trace) { return oe_series(trace.x); }

}  // namespace explora
