#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "explora/analysis.hpp"
#include "explora/benchmarks.hpp"
#include "explora/entropy.hpp"
#include "explora/harness.hpp"
#include "explora/otsd.hpp"
#include "explora/svg.hpp"
#include "explora/trace.hpp"

#include "CLI11.hpp"

namespace explora {

namespace clidetail {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitUnsupported = 3;

inline void check_unit_cube(const ObservationTrace& trace, const std::string& path) {
  for (const Point& p : trace.x)
    for (double v : p)
      if (v < -1e-9 || v > 1.0 + 1e-9)
        throw InputError("trace " + path + ": point outside the unit cube");
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot open for write: " + path);
  os << content;
}

inline MetricSeries run_best_series(const ObservationTrace& trace) {
  MetricSeries s;
  s.t0 = 1;
  double best = -std::numeric_limits<double>::infinity();
  for (double y : trace.y) {
    best = std::max(best, y);
    s.values.push_back(best);
  }
  return s;
}

inline int cmd_run(const std::string& config_path, int workers_override,
                   const std::string& out_override, std::ostream& out) {
  ExperimentConfig cfg = load_config(config_path);
  if (workers_override > 0) cfg.workers = workers_override;
  if (!out_override.empty()) cfg.output_dir = out_override;
  std::vector<RunRecord> records = run_experiment(cfg);
  for (const RunRecord& rec : records) {
    double best = rec.trace.best_so_far(rec.trace.size());
    out << rec.fingerprint << " evals=" << rec.trace.size() << " best=" << best
        << " fit_failures=" << rec.fit_failures << "\n";
  }
  out << records.size() << " run(s) written to " << cfg.output_dir << "\n";
  return kExitOk;
}

inline int cmd_metrics(const std::vector<std::string>& trace_paths, const std::string& kind,
                       const std::string& out_path, std::ostream& out) {
  if (kind != "otsd" && kind != "otsd-norm" && kind != "oe")
    throw InputError("metrics: --kind must be otsd, otsd-norm, or oe");
  namespace fs = std::filesystem;
  bool out_is_file = trace_paths.size() == 1 && !out_path.empty() &&
                     out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv";
  if (!out_path.empty() && !out_is_file) fs::create_directories(out_path);
  for (const std::string& path : trace_paths) {
    ObservationTrace trace = read_trace_file(path);
    check_unit_cube(trace, path);
    MetricSeries series;
    if (kind == "otsd") {
      series = otsd_series(trace);
    } else if (kind == "otsd-norm") {
      if (trace.dim() < 2) throw UnsupportedError("otsd-norm: requires d >= 2");
      series = otsd_normalized(trace);
    } else {
      if (trace.dim() > kOeMaxDim) throw UnsupportedError("oe: requires d <= 50");
      series = oe_series(trace);
    }
    fs::path dest;
    if (out_is_file) {
      dest = out_path;
    } else {
      fs::path stem = fs::path(path).stem();
      fs::path dir = out_path.empty() ? fs::path(path).parent_path() : fs::path(out_path);
      dest = dir / (stem.string() + "_" + kind + ".csv");
    }
    write_series_csv_file(series, dest.string());
    out << path << " -> " << dest.string() << " (" << series.size() << " rows)\n";
  }
  return kExitOk;
}

struct TraceMatrix {
  std::vector<std::string> methods;
  std::vector<std::string> problems;
  // per (method, problem): seed-level traces
  std::map<std::string, std::map<std::string, std::vector<ObservationTrace>>> cells;
  int budget = 0;
};

inline TraceMatrix load_trace_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError("not a directory: " + dir);
  TraceMatrix m;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no .jsonl traces in " + dir);
  for (const auto& f : files) {
    ObservationTrace trace = read_trace_file(f.string());
    check_unit_cube(trace, f.string());
    if (m.budget == 0) m.budget = trace.size();
    if (trace.size() != m.budget)
      throw InputError("trace " + f.string() + ": iteration grid differs from the others");
    m.cells[trace.meta.af][trace.meta.benchmark].push_back(std::move(trace));
  }
  for (const auto& [method, probs] : m.cells) m.methods.push_back(method);
  std::map<std::string, bool> problem_set;
  for (const auto& [method, probs] : m.cells)
    for (const auto& [p, v] : probs) problem_set[p] = true;
  for (const auto& [p, v] : problem_set) m.problems.push_back(p);
  for (const auto& method : m.methods)
    for (const auto& p : m.problems)
      if (!m.cells.at(method).count(p))
        throw InputError("analyze: method '" + method + "' has no traces for problem '" + p +
                         "'");
  return m;
}

inline int cmd_analyze(const std::string& trace_dir, const std::string& rank_kind,
                       const std::string& out_dir, std::ostream& out) {
  if (rank_kind != "performance" && rank_kind != "oe")
    throw InputError("analyze: --rank must be performance or oe");
  namespace fs = std::filesystem;
  TraceMatrix m = load_trace_dir(trace_dir);
  fs::create_directories(out_dir);

  // mean normalized OTSD per method
  WideSeries norm;
  norm.t0 = 1;
  for (const std::string& method : m.methods) {
    std::vector<ObservationTrace> all;
    for (const auto& p : m.problems)
      for (const auto& tr : m.cells.at(method).at(p)) all.push_back(tr);
    MeanSeries ms = aggregate_normalized_otsd(all);
    norm.methods.push_back(method);
    norm.columns.push_back(ms.mean);
  }
  {
    std::ofstream os(fs::path(out_dir) / "otsd_norm.csv", std::ios::binary);
    write_wide_csv(norm, os);
  }
  write_text_file((fs::path(out_dir) / "otsd_norm.svg").string(),
                  render_line_chart(norm, "mean normalized OTSD", "normalized OTSD"));

  // per-problem, per-method series of the ranked quantity (seed means)
  const bool is_oe = rank_kind == "oe";
  const int t0 = is_oe ? 3 : 1;
  const int T = m.budget;
  const int n_rows = T - t0 + 1;
  std::map<std::string, std::map<std::string, std::vector<double>>> series;
  for (const std::string& method : m.methods) {
    for (const std::string& p : m.problems) {
      const auto& traces = m.cells.at(method).at(p);
      std::vector<std::vector<double>> per_seed;
      for (const auto& tr : traces) {
        MetricSeries s = is_oe ? oe_series(tr) : run_best_series(tr);
        per_seed.push_back(s.values);
      }
      std::vector<double> mean_series(n_rows);
      for (int r = 0; r < n_rows; ++r) {
        std::vector<double> vals;
        vals.reserve(per_seed.size());
        for (const auto& s : per_seed) vals.push_back(s[r]);
        mean_series[r] = stable_mean(std::move(vals));
      }
      series[method][p] = std::move(mean_series);
    }
  }
  WideSeries ranks;
  ranks.t0 = t0;
  ranks.methods = m.methods;
  ranks.columns.assign(m.methods.size(), std::vector<double>(n_rows, 0.0));
  RankDirection dir = is_oe ? RankDirection::OE_REVERSED : RankDirection::PERFORMANCE;
  for (int r = 0; r < n_rows; ++r) {
    std::map<std::string, std::map<std::string, double>> cell_values;
    for (const std::string& method : m.methods)
      for (const std::string& p : m.problems)
        cell_values[method][p] = series.at(method).at(p)[r];
    RankTable table = mean_relative_ranking(cell_values, dir);
    for (std::size_t i = 0; i < table.methods.size(); ++i) {
      auto it = std::find(ranks.methods.begin(), ranks.methods.end(), table.methods[i]);
      ranks.columns[it - ranks.methods.begin()][r] = table.mean_rank[i];
    }
  }
  std::string rank_name = std::string("rank_") + rank_kind;
  {
    std::ofstream os(fs::path(out_dir) / (rank_name + ".csv"), std::ios::binary);
    write_wide_csv(ranks, os);
  }
  write_text_file((fs::path(out_dir) / (rank_name + ".svg")).string(),
                  render_line_chart(ranks, "mean relative rank (" + rank_kind + ")",
                                    "mean rank"));
  out << "methods: " << m.methods.size() << ", problems: " << m.problems.size()
      << ", budget: " << m.budget << "\n";
  for (std::size_t i = 0; i < ranks.methods.size(); ++i)
    out << ranks.methods[i] << " terminal_rank=" << ranks.columns[i].back() << "\n";
  out << "wrote otsd_norm.csv otsd_norm.svg " << rank_name << ".csv " << rank_name << ".svg in "
      << out_dir << "\n";
  return kExitOk;
}

inline int cmd_verify_bound(const std::string& trace_dir, const std::vector<int>& random_args,
                            std::ostream& out) {
  std::vector<ObservationTrace> traces;
  if (!random_args.empty()) {
    if (random_args.size() != 3)
      throw InputError("verify-bound: --random needs d t reps");
    int d = random_args[0], t = random_args[1], reps = random_args[2];
    if (d < 3) throw InputError("verify-bound: d must be >= 3");
    if (t < 1 || reps < 1) throw InputError("verify-bound: t and reps must be >= 1");
    for (int rep = 0; rep < reps; ++rep) {
      Rng rng(hash_mix(hash_str("verify-bound"), hash_mix(d, rep)));
      ObservationTrace tr;
      tr.meta.benchmark = "uniform_d" + std::to_string(d);
      tr.meta.af = "random";
      tr.meta.seed = rep;
      tr.meta.dim = d;
      for (int i = 0; i < t; ++i) {
        Point p(d);
        for (double& v : p) v = rng.uniform();
        tr.append(p, 0.0);
      }
      traces.push_back(std::move(tr));
    }
  } else {
    TraceMatrix m = load_trace_dir(trace_dir);
    for (auto& [method, probs] : m.cells)
      for (auto& [p, trs] : probs)
        for (auto& tr : trs) traces.push_back(std::move(tr));
  }
  BoundReport report = verify_otsd_bound(traces);
  std::map<int, std::pair<double, int>> per_d;  // d -> (max, count)
  for (const auto& e : report.entries) {
    auto& slot = per_d[e.dim];
    slot.first = std::max(slot.first, e.max_normalized);
    slot.second += 1;
  }
  out << "d,traces,max_normalized,informational,hard\n";
  for (const auto& [d, slot] : per_d)
    out << d << "," << slot.second << "," << slot.first << "," << (slot.first >= 1.0 ? 1 : 0)
        << "," << (slot.first >= 2.0 ? 1 : 0) << "\n";
  if (report.any_hard) {
    out << "hard violation: normalized OTSD >= 2\n";
    return kExitViolation;
  }
  if (report.any_informational) out << "note: normalized OTSD >= 1 observed (informational)\n";
  return kExitOk;
}

inline int cmd_bench_oracle(std::uint64_t seed, int tsp_reps, int entropy_points,
                            std::ostream& out) {
  bool all_ok = true;
  // fixed fixture: unit-square corners
  std::vector<Point> corners = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  double heur = otsd(corners);
  double exact = exact_tsp(corners);
  bool corners_ok = std::abs(heur - 4.0) < 1e-12 && std::abs(exact - 4.0) < 1e-12;
  all_ok &= corners_ok;
  out << "tsp corners heuristic=" << heur << " exact=" << exact << " "
      << (corners_ok ? "ok" : "FAIL") << "\n";

  Rng rng(seed);
  double worst_ratio = 0.0;
  for (int rep = 0; rep < tsp_reps; ++rep) {
    int n = rng.uniform_int(4, 9);
    int dims[3] = {2, 3, 6};
    int d = dims[rng.uniform_int(0, 2)];
    std::vector<Point> pts(n, Point(d));
    for (auto& p : pts)
      for (double& v : p) v = rng.uniform();
    double h = otsd(pts);
    double e = exact_tsp(pts);
    worst_ratio = std::max(worst_ratio, e > 0.0 ? h / e : 1.0);
  }
  bool tsp_ok = worst_ratio <= 2.0 + 1e-12;
  all_ok &= tsp_ok;
  out << "tsp random reps=" << tsp_reps << " worst_ratio=" << worst_ratio << " "
      << (tsp_ok ? "ok" : "FAIL") << "\n";

  {
    std::vector<Point> pts(entropy_points, Point(2));
    for (auto& p : pts)
      for (double& v : p) v = rng.uniform();
    int k = oe_k_schedule(entropy_points);
    double est = oe(pts, k);
    bool ok = std::abs(est) <= 0.1;
    all_ok &= ok;
    out << "entropy uniform d=2 n=" << entropy_points << " k=" << k << " oe=" << est << " "
        << (ok ? "ok" : "FAIL") << "\n";
  }
  {
    const double ln2pie = 2.8378770664093455;
    std::vector<Point> pts(entropy_points, Point(2));
    for (auto& p : pts)
      for (double& v : p) v = rng.normal();
    int k = oe_k_schedule(entropy_points);
    double est = oe(pts, k);
    bool ok = std::abs(est - ln2pie) <= 0.15;
    all_ok &= ok;
    out << "entropy gaussian d=2 n=" << entropy_points << " k=" << k << " oe=" << est
        << " target=" << ln2pie << " " << (ok ? "ok" : "FAIL") << "\n";
  }
  return all_ok ? kExitOk : kExitViolation;
}

}  // namespace clidetail

// In-process entry point; returns the process exit code.
inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  using namespace clidetail;
  CLI::App app{"exploration metrics for black-box optimizer traces"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment matrix from a config file");
  std::string run_config;
  int run_workers = 0;
  std::string run_out;
  run->add_option("config", run_config, "config file path")->required();
  run->add_option("--workers", run_workers, "concurrent runs");
  run->add_option("--out", run_out, "output directory (overrides config)");

  auto* metrics = app.add_subcommand("metrics", "compute a metric series from trace files");
  std::vector<std::string> metrics_traces;
  std::string metrics_kind, metrics_out;
  metrics->add_option("traces", metrics_traces, "trace .jsonl files")->required();
  metrics->add_option("--kind", metrics_kind, "otsd|otsd-norm|oe")->required();
  metrics->add_option("--out", metrics_out, "output CSV path (single trace) or directory");

  auto* analyze = app.add_subcommand("analyze", "rank methods across a trace directory");
  std::string analyze_dir, analyze_rank = "performance", analyze_out = "analysis";
  analyze->add_option("trace_dir", analyze_dir, "directory of .jsonl traces")->required();
  analyze->add_option("--rank", analyze_rank, "performance|oe");
  analyze->add_option("--out", analyze_out, "output directory");

  auto* verify = app.add_subcommand("verify-bound", "check normalized OTSD against the bound");
  std::string verify_dir;
  std::vector<int> verify_random;
  verify->add_option("trace_dir", verify_dir, "directory of .jsonl traces");
  verify->add_option("--random", verify_random, "d t reps: uniform-random traces")
      ->expected(3);

  auto* oracle = app.add_subcommand("bench-oracle", "run brute-force oracles on small fixtures");
  std::uint64_t oracle_seed = 7;
  int oracle_tsp_reps = 50, oracle_entropy_points = 2000;
  oracle->add_option("--seed", oracle_seed, "oracle seed");
  oracle->add_option("--tsp-reps", oracle_tsp_reps, "random TSP instances");
  oracle->add_option("--entropy-points", oracle_entropy_points, "points per entropy fixture");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (run->parsed()) return cmd_run(run_config, run_workers, run_out, out);
    if (metrics->parsed()) return cmd_metrics(metrics_traces, metrics_kind, metrics_out, out);
    if (analyze->parsed()) return cmd_analyze(analyze_dir, analyze_rank, analyze_out, out);
    if (verify->parsed()) {
      if (verify_dir.empty() && verify_random.empty())
        throw InputError("verify-bound: give a trace directory or --random d t reps");
      return cmd_verify_bound(verify_dir, verify_random, out);
    }
    if (oracle->parsed())
      return cmd_bench_oracle(oracle_seed, oracle_tsp_reps, oracle_entropy_points, out);
    err << "error: no subcommand\n";
    return kExitInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitViolation;
  }
}

}  // namespace explora
