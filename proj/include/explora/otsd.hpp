#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "explora/common.hpp"
#include "explora/trace.hpp"

namespace explora {

inline double euclidean(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    double diff = a[j] - b[j];
    s += diff * diff;
  }
  return std::sqrt(s);
}

// Cyclic tour under incremental cheapest insertion.  perm holds point
// indices in tour order; edges[i] caches D(perm[i], perm[i+1 mod n]);
// length is the closed-tour Euclidean length.
struct TourState {
  std::vector<int> perm;
  std::vector<double> edges;
  double length = 0.0;

  int size() const { return static_cast<int>(perm.size()); }

  double recompute_length(const std::vector<Point>& pts) const {
    if (perm.size() < 2) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      total += euclidean(pts[perm[i]], pts[perm[(i + 1) % perm.size()]]);
    return total;
  }
};

// Alg. 1 step: insert point k (index into pts) at the position minimizing
// dC(i) = D(perm[i], k) + D(k, perm[i+1]) - D(perm[i], perm[i+1]).
// Ties resolve to the smallest tour index i.
inline void otsd_insert(TourState& state, int k, const std::vector<Point>& pts) {
  const int n = state.size();
  if (n == 0) {
    state.perm.push_back(k);
    return;
  }
  if (pts[k].size() != pts[state.perm[0]].size())
    throw InputError("otsd_insert: dimension mismatch");
  if (n == 1) {
    double d01 = euclidean(pts[state.perm[0]], pts[k]);
    state.perm.push_back(k);
    state.edges = {d01, d01};
    state.length = 2.0 * d01;
    return;
  }
  std::vector<double> dist(n);
  for (int i = 0; i < n; ++i) dist[i] = euclidean(pts[state.perm[i]], pts[k]);
  int best_i = 0;
  double best_dc = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double dc = dist[i] + dist[(i + 1) % n] - state.edges[i];
    if (dc < best_dc) {
      best_dc = dc;
      best_i = i;
    }
  }
  if (best_dc < 0.0) best_dc = 0.0;
  state.perm.insert(state.perm.begin() + best_i + 1, k);
  state.edges[best_i] = dist[best_i];
  state.edges.insert(state.edges.begin() + best_i + 1, dist[(best_i + 1) % n]);
  state.length += best_dc;
}

inline MetricSeries otsd_series(const std::vector<Point>& pts) {
  if (pts.empty()) throw InputError("otsd_series: empty trace");
  MetricSeries series;
  series.t0 = 1;
  series.values.reserve(pts.size());
  TourState state;
  for (int t = 0; t < static_cast<int>(pts.size()); ++t) {
    otsd_insert(state, t, pts);
    series.values.push_back(state.length);
  }
  return series;
}

inline MetricSeries otsd_series(const ObservationTrace& trace) { return otsd_series(trace.x); }

inline double otsd(const std::vector<Point>& pts) { return otsd_series(pts).back(); }

// Psi(d,t) = 2 sqrt(5d) (3t/2)^(1 - 1/d)
inline double psi_bound(int d, int t) {
  if (d < 2) throw InputError("psi_bound: d must be >= 2");
  if (t < 1) throw InputError("psi_bound: t must be >= 1");
  return 2.0 * std::sqrt(5.0 * d) * std::pow(1.5 * t, 1.0 - 1.0 / d);
}

inline MetricSeries otsd_normalized(const std::vector<Point>& pts, int d) {
  if (d < 2) throw UnsupportedError("otsd_normalized: requires d >= 2");
  MetricSeries series = otsd_series(pts);
  for (int i = 0; i < series.size(); ++i) series.values[i] /= psi_bound(d, series.t0 + i);
  return series;
}

inline MetricSeries otsd_normalized(const ObservationTrace& trace) {
  return otsd_normalized(trace.x, trace.dim());
}

// Exhaustive TSP oracle: fixes the first point and enumerates (n-1)!
// orderings of the rest.
inline double exact_tsp(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 1) throw InputError("exact_tsp: empty input");
  if (n > 10) throw InputError("exact_tsp: n > 10");
  if (n == 1) return 0.0;
  if (n == 2) return 2.0 * euclidean(pts[0], pts[1]);
  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = euclidean(pts[0], pts[rest.front()]) + euclidean(pts[rest.back()], pts[0]);
    for (int i = 0; i + 1 < n - 1; ++i) len += euclidean(pts[rest[i]], pts[rest[i + 1]]);
    best = std::min(best, len);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

}  // namespace explora
