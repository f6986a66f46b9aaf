#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "explora/common.hpp"
#include "explora/otsd.hpp"
#include "explora/trace.hpp"

namespace explora {

// Sorted-order summation keeps aggregates bit-identical under input
// permutation.
inline double stable_sum(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

inline double stable_mean(std::vector<double> v) {
  if (v.empty()) throw InputError("mean of empty set");
  double n = static_cast<double>(v.size());
  return stable_sum(std::move(v)) / n;
}

struct MeanSeries {
  int t0 = 1;
  std::vector<double> mean;
  std::vector<double> sem;

  int size() const { return static_cast<int>(mean.size()); }
};

// Per-method aggregate of normalized OTSD: mean over seeds within each
// benchmark, then mean over benchmarks.  sem propagates the seed-level
// variance through that two-stage average:
//   se^2 = (1/B^2) sum_b var_b / n_b
inline MeanSeries aggregate_normalized_otsd(const std::vector<ObservationTrace>& traces) {
  if (traces.empty()) throw InputError("aggregate_normalized_otsd: no traces");
  const int T = traces[0].size();
  for (const auto& tr : traces)
    if (tr.size() != T)
      throw InputError("aggregate_normalized_otsd: traces disagree on iteration grid");
  std::map<std::string, std::vector<MetricSeries>> by_benchmark;
  for (const auto& tr : traces)
    by_benchmark[tr.meta.benchmark].push_back(otsd_normalized(tr));
  MeanSeries out;
  out.t0 = 1;
  out.mean.assign(T, 0.0);
  out.sem.assign(T, 0.0);
  const double B = static_cast<double>(by_benchmark.size());
  for (int i = 0; i < T; ++i) {
    std::vector<double> bench_means;
    double var_acc = 0.0;
    for (const auto& [name, series_list] : by_benchmark) {
      std::vector<double> vals;
      vals.reserve(series_list.size());
      for (const auto& s : series_list) vals.push_back(s.values[i]);
      double m = stable_mean(vals);
      bench_means.push_back(m);
      if (vals.size() > 1) {
        std::vector<double> sq;
        sq.reserve(vals.size());
        for (double v : vals) sq.push_back((v - m) * (v - m));
        double var = stable_sum(std::move(sq)) / (vals.size() - 1);
        var_acc += var / vals.size();
      }
    }
    out.mean[i] = stable_mean(bench_means);
    out.sem[i] = std::sqrt(var_acc) / B;
  }
  return out;
}

enum class RankDirection { PERFORMANCE, OE_REVERSED };

// Fractional (average) ranks.  PERFORMANCE: the largest value ranks 1.
// OE_REVERSED: the largest value ranks M (more explorative -> larger rank).
inline std::vector<double> rank_values(const std::vector<double>& values, RankDirection dir) {
  const int m = static_cast<int>(values.size());
  if (m == 0) throw InputError("rank_values: empty");
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[a] != values[b])
      return dir == RankDirection::PERFORMANCE ? values[a] > values[b] : values[a] < values[b];
    return a < b;
  });
  std::vector<double> ranks(m, 0.0);
  int i = 0;
  while (i < m) {
    int j = i;
    while (j + 1 < m && values[order[j + 1]] == values[order[i]]) ++j;
    double avg = 0.5 * (i + j) + 1.0;  // average of ranks i+1..j+1
    for (int k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

struct RankTable {
  std::vector<std::string> methods;
  std::vector<std::string> problems;
  std::vector<double> mean_rank;  // per method, averaged over problems
  RankDirection direction = RankDirection::PERFORMANCE;
};

// values[method][problem] -> fractional ranks per problem, averaged across
// problems ("mean relative ranking").
inline RankTable mean_relative_ranking(
    const std::map<std::string, std::map<std::string, double>>& values, RankDirection dir) {
  if (values.empty()) throw InputError("mean_relative_ranking: no methods");
  RankTable table;
  table.direction = dir;
  for (const auto& [method, cells] : values) table.methods.push_back(method);
  for (const auto& [problem, v] : values.begin()->second) table.problems.push_back(problem);
  for (const auto& [method, cells] : values) {
    if (cells.size() != table.problems.size())
      throw InputError("mean_relative_ranking: method '" + method + "' missing problems");
    for (const std::string& p : table.problems)
      if (!cells.count(p))
        throw InputError("mean_relative_ranking: method '" + method + "' missing problem '" +
                         p + "'");
  }
  const int M = static_cast<int>(table.methods.size());
  std::vector<std::vector<double>> rank_acc(M);
  for (const std::string& p : table.problems) {
    std::vector<double> vals;
    vals.reserve(M);
    for (const std::string& method : table.methods) vals.push_back(values.at(method).at(p));
    std::vector<double> ranks = rank_values(vals, dir);
    for (int i = 0; i < M; ++i) rank_acc[i].push_back(ranks[i]);
  }
  table.mean_rank.resize(M);
  for (int i = 0; i < M; ++i) table.mean_rank[i] = stable_mean(rank_acc[i]);
  return table;
}

struct BoundReport {
  struct Entry {
    std::string id;
    int dim = 0;
    double max_normalized = 0.0;
    bool informational = false;  // >= 1
    bool hard_violation = false;  // >= 2
  };
  std::vector<Entry> entries;
  double overall_max = 0.0;
  bool any_informational = false;
  bool any_hard = false;
};

// Empirical bound check: normalized OTSD should stay < 1;
// >= 2 contradicts the 2-approximation x Prop.-1 guarantee.
inline BoundReport verify_otsd_bound(const std::vector<ObservationTrace>& traces) {
  if (traces.empty()) throw InputError("verify_otsd_bound: no traces");
  BoundReport report;
  for (const auto& tr : traces) {
    if (tr.dim() < 3) throw InputError("verify_otsd_bound: requires d >= 3");
    MetricSeries norm = otsd_normalized(tr);
    BoundReport::Entry e;
    e.id = tr.meta.benchmark.empty() ? ("trace" + std::to_string(report.entries.size()))
                                     : tr.meta.benchmark + "/" + tr.meta.af + "/" +
                                           std::to_string(tr.meta.seed);
    e.dim = tr.dim();
    e.max_normalized = *std::max_element(norm.values.begin(), norm.values.end());
    e.informational = e.max_normalized >= 1.0;
    e.hard_violation = e.max_normalized >= 2.0;
    report.overall_max = std::max(report.overall_max, e.max_normalized);
    report.any_informational |= e.informational;
    report.any_hard |= e.hard_violation;
    report.entries.push_back(std::move(e));
  }
  return report;
}

// Wide-format table: one shared t column, one value column per method.
struct WideSeries {
  int t0 = 1;
  std::vector<std::string> methods;
  std::vector<std::vector<double>> columns;

  int rows() const { return columns.empty() ? 0 : static_cast<int>(columns[0].size()); }

  void validate() const {
    if (methods.empty()) throw InputError("wide series: empty method set");
    if (methods.size() != columns.size())
      throw InputError("wide series: methods/columns mismatch");
    for (const auto& c : columns)
      if (static_cast<int>(c.size()) != rows())
        throw InputError("wide series: ragged columns");
  }
};

inline void write_wide_csv(const WideSeries& ws, std::ostream& os) {
  ws.validate();
  os << "t";
  for (const std::string& m : ws.methods) os << "," << m;
  os << "\n";
  std::ostringstream fmt;
  fmt.precision(17);
  for (int r = 0; r < ws.rows(); ++r) {
    os << (ws.t0 + r);
    for (const auto& c : ws.columns) {
      fmt.str("");
      fmt << c[r];
      os << "," << fmt.str();
    }
    os << "\n";
  }
}

}  // namespace explora
