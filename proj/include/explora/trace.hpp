#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "explora/common.hpp"

#include "json.hpp"

namespace explora {

struct TraceMeta {
  std::string benchmark;
  std::string af;
  std::uint64_t seed = 0;
  int dim = 0;
  int doe = 0;
};

// Ordered record of (x_t, y_t) observations from one optimizer run.
struct ObservationTrace {
  TraceMeta meta;
  std::vector<Point> x;
  std::vector<double> y;

  int size() const { return static_cast<int>(y.size()); }
  int dim() const { return meta.dim; }

  void append(const Point& xt, double yt) {
    if (meta.dim == 0) meta.dim = static_cast<int>(xt.size());
    if (static_cast<int>(xt.size()) != meta.dim)
      throw InputError("ObservationTrace: inconsistent point dimension");
    x.push_back(xt);
    y.push_back(yt);
  }

  double best_so_far(int t) const {
    double best = y.at(0);
    for (int i = 1; i < t; ++i) best = std::max(best, y[i]);
    return best;
  }
};

// One value per step t; t starts where the metric is first defined.
struct MetricSeries {
  int t0 = 1;
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  double at_t(int t) const { return values.at(t - t0); }
  double back() const { return values.back(); }
};

inline void write_trace(const ObservationTrace& trace, std::ostream& os) {
  nlohmann::json header = {{"schema", 1},
                           {"benchmark", trace.meta.benchmark},
                           {"af", trace.meta.af},
                           {"seed", trace.meta.seed},
                           {"dim", trace.meta.dim},
                           {"doe", trace.meta.doe}};
  os << header.dump() << "\n";
  for (int i = 0; i < trace.size(); ++i) {
    nlohmann::json row = {{"t", i + 1}, {"x", trace.x[i]}, {"y", trace.y[i]}};
    os << row.dump() << "\n";
  }
}

inline void write_trace_file(const ObservationTrace& trace, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open for write: " + path);
  write_trace(trace, os);
}

inline ObservationTrace read_trace(std::istream& is, const std::string& what = "<stream>") {
  ObservationTrace trace;
  std::string line;
  int line_no = 1;
  auto at = [&]() { return what + ":" + std::to_string(line_no); };
  if (!std::getline(is, line)) throw InputError("empty trace: " + what);
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("bad trace header at " + at() + ": " + e.what());
  }
  if (!header.contains("schema") || header["schema"].get<int>() != 1)
    throw InputError("unsupported trace schema at " + at());
  trace.meta.benchmark = header.value("benchmark", "");
  trace.meta.af = header.value("af", "");
  trace.meta.seed = header.value("seed", std::uint64_t{0});
  trace.meta.dim = header.value("dim", 0);
  trace.meta.doe = header.value("doe", 0);
  int expect_t = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw InputError("bad trace row at " + at() + ": " + e.what());
    }
    if (!row.contains("t") || !row.contains("x") || !row.contains("y"))
      throw InputError("trace row missing field at " + at());
    if (row["t"].get<int>() != expect_t)
      throw InputError("trace rows out of order at " + at());
    Point xt = row["x"].get<Point>();
    if (trace.meta.dim != 0 && static_cast<int>(xt.size()) != trace.meta.dim)
      throw InputError("trace row dimension mismatch at " + at());
    trace.append(xt, row["y"].get<double>());
    ++expect_t;
  }
  return trace;
}

inline ObservationTrace read_trace_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open trace: " + path);
  return read_trace(is, path);
}

inline void write_series_csv(const MetricSeries& series, std::ostream& os) {
  os << "t,value\n";
  std::ostringstream fmt;
  fmt.precision(17);
  for (int i = 0; i < series.size(); ++i) {
    fmt.str("");
    fmt << series.values[i];
    os << (series.t0 + i) << "," << fmt.str() << "\n";
  }
}

inline void write_series_csv_file(const MetricSeries& series, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open for write: " + path);
  write_series_csv(series, os);
}

}  // namespace explora
