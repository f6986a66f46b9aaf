#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "explora/acquisition.hpp"
#include "explora/benchmarks.hpp"
#include "explora/gp.hpp"
#include "explora/maximize.hpp"
#include "explora/trace.hpp"
#include "explora/trust_region.hpp"

namespace explora {

struct ExperimentConfig {
  std::vector<std::string> benchmarks;
  std::vector<AcquisitionSpec> afs;
  std::vector<std::uint64_t> seeds;
  int doe_size = 10;
  int budget = 200;
  std::string output_dir = "traces";
  int workers = 1;

  void validate() const {
    if (benchmarks.empty()) throw InputError("config: no benchmarks");
    if (afs.empty()) throw InputError("config: no afs");
    if (seeds.empty()) throw InputError("config: no seeds");
    if (doe_size < 1) throw InputError("config: doe_size must be >= 1");
    if (budget < doe_size) throw InputError("config: budget must be >= doe_size");
    if (workers < 1) throw InputError("config: workers must be >= 1");
    for (const std::string& name : benchmarks) make_benchmark(name);
    for (const AcquisitionSpec& spec : afs)
      if (spec.q > 1 && (budget - doe_size) % spec.q != 0)
        throw InputError("config: budget - doe_size must be divisible by q for '" +
                         spec.label() + "'");
  }
};

namespace harnessdetail {

inline std::string strip(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

// strips comments outside of quoted strings
inline std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    else if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

inline std::vector<std::string> split_array(const std::string& body, int line_no) {
  std::vector<std::string> items;
  std::string cur;
  bool in_str = false;
  for (char c : body) {
    if (c == '"') {
      in_str = !in_str;
      cur.push_back(c);
    } else if (c == ',' && !in_str) {
      items.push_back(strip(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  std::string last = strip(cur);
  if (!last.empty()) items.push_back(last);
  for (const std::string& it : items)
    if (it.empty())
      throw InputError("config line " + std::to_string(line_no) + ": empty array element");
  return items;
}

inline std::string unquote(const std::string& s, int line_no) {
  if (s.size() < 2 || s.front() != '"' || s.back() != '"')
    throw InputError("config line " + std::to_string(line_no) + ": expected quoted string");
  return s.substr(1, s.size() - 2);
}

inline long long to_int(const std::string& s, int line_no) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw InputError("");
    return v;
  } catch (...) {
    throw InputError("config line " + std::to_string(line_no) + ": expected integer, got '" +
                     s + "'");
  }
}

}  // namespace harnessdetail

// TOML-style key/value config:
//   benchmarks = ["hartmann6"]
//   afs = ["ei", "ucb(0.1)+tr"]
//   seeds = [1, 2, 3]
//   doe_size = 10
//   budget = 100
//   output_dir = "traces"
//   workers = 2
inline ExperimentConfig parse_config(std::istream& is) {
  using namespace harnessdetail;
  ExperimentConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    line = strip(strip_comment(line));
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw InputError("config line " + std::to_string(line_no) + ": expected key = value");
    std::string key = strip(line.substr(0, eq));
    std::string val = strip(line.substr(eq + 1));
    if (val.empty())
      throw InputError("config line " + std::to_string(line_no) + ": empty value");
    auto parse_list = [&](bool quoted) {
      if (val.front() != '[' || val.back() != ']')
        throw InputError("config line " + std::to_string(line_no) + ": expected array");
      std::vector<std::string> items = split_array(val.substr(1, val.size() - 2), line_no);
      if (items.empty())
        throw InputError("config line " + std::to_string(line_no) + ": empty array");
      std::vector<std::string> out;
      for (const std::string& it : items)
        out.push_back(quoted ? unquote(it, line_no) : it);
      return out;
    };
    if (key == "benchmarks") {
      cfg.benchmarks = parse_list(true);
    } else if (key == "afs") {
      cfg.afs.clear();
      for (const std::string& s : parse_list(true)) cfg.afs.push_back(AcquisitionSpec::parse(s));
    } else if (key == "seeds") {
      cfg.seeds.clear();
      for (const std::string& s : parse_list(false))
        cfg.seeds.push_back(static_cast<std::uint64_t>(to_int(s, line_no)));
    } else if (key == "doe_size") {
      cfg.doe_size = static_cast<int>(to_int(val, line_no));
    } else if (key == "budget") {
      cfg.budget = static_cast<int>(to_int(val, line_no));
    } else if (key == "output_dir") {
      cfg.output_dir = unquote(val, line_no);
    } else if (key == "workers") {
      cfg.workers = static_cast<int>(to_int(val, line_no));
    } else {
      throw InputError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open config: " + path);
  return parse_config(is);
}

struct RunRecord {
  std::string fingerprint;
  ObservationTrace trace;
  std::vector<double> iter_seconds;
  int fit_failures = 0;
};

inline std::string trace_filename(const std::string& benchmark, const AcquisitionSpec& spec,
                                  std::uint64_t seed) {
  return benchmark + "_" + spec.af_token() + "_" + spec.variant_token() + "_" +
         std::to_string(seed) + ".jsonl";
}

// One full BO run.  The DoE stream depends only on (benchmark, seed) so
// all AFs share initial designs seed-for-seed; the run stream also hashes
// the AF label.
inline RunRecord run_one(const Benchmark& bench, const AcquisitionSpec& spec,
                         std::uint64_t seed, int doe_size, int budget) {
  spec.validate(bench.dim);
  RunRecord rec;
  rec.fingerprint = bench.name + "/" + spec.label() + "/" + std::to_string(seed);
  rec.trace.meta = {bench.name, spec.label(), seed, bench.dim, doe_size};

  Rng doe_rng(hash_mix(hash_str(bench.name + "|doe"), seed));
  Rng run_rng(hash_mix(hash_str(bench.name + "|" + spec.label()), seed));

  double incumbent = -std::numeric_limits<double>::infinity();
  Point incumbent_point;
  for (auto& [u, y] : doe(bench, std::min(doe_size, budget), doe_rng)) {
    rec.trace.append(u, y);
    if (y > incumbent) {
      incumbent = y;
      incumbent_point = u;
    }
  }
  Point dm_point = incumbent_point;

  TrustRegionState tr;
  tr.center = incumbent_point;

  Bounds cube = Bounds::unit_cube(bench.dim);
  while (rec.trace.size() < budget) {
    auto tic = std::chrono::steady_clock::now();
    int remaining = budget - rec.trace.size();
    int q_eff = std::min(spec.q, remaining);

    GpModel model;
    bool fit_ok = true;
    if (spec.uses_surrogate()) {
      try {
        model = GpModel::fit(rec.trace.x, rec.trace.y, Rng(run_rng.next_u64()));
      } catch (const ModelFitError&) {
        fit_ok = false;
        ++rec.fit_failures;
      }
    }

    std::vector<Point> next;
    if (!fit_ok) {
      next.resize(q_eff);
      for (Point& p : next) {
        p.resize(bench.dim);
        for (double& v : p) v = run_rng.uniform();
      }
    } else {
      Bounds bounds = cube;
      if (spec.trust_region && spec.uses_surrogate()) {
        tr.center = incumbent_point;
        bounds = tr_bounds(tr, model.params().lengthscales);
      }
      AcqContext ctx;
      ctx.incumbent = incumbent;
      ctx.incumbent_point = incumbent_point;
      ctx.dm_point = dm_point;
      if (spec.kind == AfKind::MES)
        ctx.mes_samples = sample_max_values(model, 10, incumbent, run_rng);
      if (q_eff > 1) {
        next = batch_select(model, spec, bounds, q_eff, ctx, run_rng);
      } else {
        next.push_back(maximize_af(model, spec, bounds, ctx, run_rng).x);
      }
    }

    bool improved = false;
    for (const Point& u : next) {
      double y = bench.evaluate(u);
      rec.trace.append(u, y);
      if (y > incumbent) {
        incumbent = y;
        incumbent_point = u;
        improved = true;
      }
    }
    if (spec.trust_region && spec.uses_surrogate() && fit_ok)
      tr_update(tr, improved, bench.dim, q_eff);

    auto toc = std::chrono::steady_clock::now();
    rec.iter_seconds.push_back(std::chrono::duration<double>(toc - tic).count());
  }
  return rec;
}

// Runs the full (benchmark x af x seed) matrix; runs execute concurrently
// up to config.workers, each trace persisted on completion.
inline std::vector<RunRecord> run_experiment(const ExperimentConfig& config,
                                             bool persist = true) {
  config.validate();
  struct Job {
    std::string benchmark;
    AcquisitionSpec spec;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const std::string& b : config.benchmarks)
    for (const AcquisitionSpec& spec : config.afs)
      for (std::uint64_t seed : config.seeds) jobs.push_back({b, spec, seed});

  if (persist) std::filesystem::create_directories(config.output_dir);

  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next_job{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next_job.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        const Job& job = jobs[i];
        Benchmark bench = make_benchmark(job.benchmark);
        records[i] = run_one(bench, job.spec, job.seed, config.doe_size, config.budget);
        if (persist) {
          std::filesystem::path out = std::filesystem::path(config.output_dir) /
                                      trace_filename(job.benchmark, job.spec, job.seed);
          write_trace_file(records[i].trace, out.string());
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  int n_workers = std::min<int>(config.workers, static_cast<int>(jobs.size()));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

}  // namespace explora
