#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <numeric>
#include <vector>

#include "explora/acquisition.hpp"
#include "explora/common.hpp"
#include "explora/gp.hpp"
#include "explora/normal.hpp"
#include "explora/otsd.hpp"
#include "explora/posterior_sample.hpp"
#include "explora/quasirandom.hpp"
#include "explora/rng.hpp"

namespace explora {

inline constexpr double kBatchDedupDistance = 1e-6;

// Per-iteration context the harness feeds to the maximizer.
struct AcqContext {
  double incumbent = -std::numeric_limits<double>::infinity();
  Point incumbent_point;
  Point dm_point;
  std::vector<double> mes_samples;
  const std::vector<Point>* exclude = nullptr;
};

struct MaximizeResult {
  Point x;
  double af_value = 0.0;
  // max AF value among the raw candidates considered; the returned point's
  // value never falls below this (refinement only improves).
  double best_raw_value = -std::numeric_limits<double>::infinity();
};

// Candidate generation near the incumbent: with probability min(1, 20/d)
// the candidate perturbs the incumbent coordinate-wise (same probability
// per coordinate) by a truncated normal (sigma = 0.2); otherwise uniform.
inline std::vector<Point> raasp_candidates(const Point& incumbent, int n, int d,
                                           const Bounds& bounds, Rng& rng) {
  if (static_cast<int>(incumbent.size()) != d)
    throw InputError("raasp_candidates: incumbent dimension mismatch");
  double p = std::min(1.0, 20.0 / d);
  std::vector<Point> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Point c(d);
    if (rng.uniform() < p) {
      for (int j = 0; j < d; ++j) {
        double center = std::clamp(incumbent[j], bounds.lo[j], bounds.hi[j]);
        if (rng.uniform() < p)
          c[j] = truncated_normal(rng, center, 0.2, bounds.lo[j], bounds.hi[j]);
        else
          c[j] = center;
      }
    } else {
      for (int j = 0; j < d; ++j) c[j] = rng.uniform(bounds.lo[j], bounds.hi[j]);
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace maxdetail {

inline bool far_from_all(const Point& x, const std::vector<Point>& others) {
  for (const Point& o : others)
    if (euclidean(x, o) < kBatchDedupDistance) return false;
  return true;
}

// Bounded finite-difference ascent: h = 1e-6 * width per dimension,
// 50 steps, backtracking halving on non-improvement.
inline void fd_refine(const std::function<double(const Point&)>& af, const Bounds& bounds,
                      Point& x, double& fx) {
  const int d = bounds.dim();
  double width_max = 0.0;
  for (int j = 0; j < d; ++j) width_max = std::max(width_max, bounds.hi[j] - bounds.lo[j]);
  double step = 0.1 * width_max;
  Point grad(d), trial;
  for (int it = 0; it < 50; ++it) {
    double norm2 = 0.0;
    for (int j = 0; j < d; ++j) {
      double h = 1e-6 * (bounds.hi[j] - bounds.lo[j]);
      trial = x;
      if (x[j] + h <= bounds.hi[j]) {
        trial[j] = x[j] + h;
        grad[j] = (af(trial) - fx) / h;
      } else {
        trial[j] = x[j] - h;
        grad[j] = (fx - af(trial)) / h;
      }
      norm2 += grad[j] * grad[j];
    }
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) break;
    double inv_norm = 1.0 / std::sqrt(norm2);
    trial = x;
    for (int j = 0; j < d; ++j)
      trial[j] = std::clamp(x[j] + step * grad[j] * inv_norm, bounds.lo[j], bounds.hi[j]);
    double ft = af(trial);
    if (ft > fx) {
      x = trial;
      fx = ft;
      step = std::min(step * 1.3, 0.2 * width_max);
    } else {
      step *= 0.5;
      if (step < 1e-9 * width_max) break;
    }
  }
}

}  // namespace maxdetail

// Multi-start AF maximization: 512 quasi-random raw candidates (1024 for
// TS), top 10 (20 for TS) refined by finite-difference ascent.  RS draws
// uniformly; DM returns the fixed context point.
inline MaximizeResult maximize_af(const GpModel& model, const AcquisitionSpec& spec,
                                  const Bounds& bounds, const AcqContext& ctx, Rng& rng) {
  bounds.validate();
  const int d = bounds.dim();
  spec.validate(d);

  MaximizeResult result;
  if (spec.kind == AfKind::RS) {
    result.x.resize(d);
    for (int j = 0; j < d; ++j) result.x[j] = rng.uniform(bounds.lo[j], bounds.hi[j]);
    return result;
  }
  if (spec.kind == AfKind::DM) {
    if (ctx.dm_point.empty()) throw InputError("maximize_af: dm requires a fixed point");
    result.x.resize(d);
    for (int j = 0; j < d; ++j) result.x[j] = std::clamp(ctx.dm_point[j], bounds.lo[j], bounds.hi[j]);
    return result;
  }
  if (!model.fitted()) throw StateError("maximize_af: model not fitted");
  if (spec.kind == AfKind::MES && ctx.mes_samples.empty())
    throw InputError("maximize_af: mes requires max-value samples");

  const bool is_ts = spec.kind == AfKind::TS;
  const int n_raw = is_ts ? 1024 : 512;
  const int n_refine = is_ts ? 20 : 10;

  std::vector<Point> candidates;
  if (spec.raasp) {
    if (ctx.incumbent_point.empty())
      throw InputError("maximize_af: raasp requires an incumbent point");
    candidates = raasp_candidates(ctx.incumbent_point, n_raw, d, bounds, rng);
  } else {
    QuasiRandom qr(d, rng.next_u64());
    candidates.reserve(n_raw);
    for (int i = 0; i < n_raw; ++i) {
      Point u = qr.next();
      for (int j = 0; j < d; ++j) u[j] = bounds.lo[j] + u[j] * (bounds.hi[j] - bounds.lo[j]);
      candidates.push_back(std::move(u));
    }
  }
  if (ctx.exclude) {
    std::vector<Point> kept;
    kept.reserve(candidates.size());
    for (auto& c : candidates)
      if (maxdetail::far_from_all(c, *ctx.exclude)) kept.push_back(std::move(c));
    candidates = std::move(kept);
    while (candidates.empty()) {
      Point c(d);
      for (int j = 0; j < d; ++j) c[j] = rng.uniform(bounds.lo[j], bounds.hi[j]);
      if (maxdetail::far_from_all(c, *ctx.exclude)) candidates.push_back(std::move(c));
    }
  }

  std::shared_ptr<PosteriorSample> ts_sample;
  std::shared_ptr<KgEvaluator> kg_eval;
  std::vector<double> kg_z;
  if (is_ts) {
    ts_sample = std::make_shared<PosteriorSample>(model, Rng(rng.next_u64()));
  } else if (spec.kind == AfKind::KG) {
    QuasiRandom qr(d, rng.next_u64());
    std::vector<Point> grid;
    grid.reserve(512);
    for (int i = 0; i < 512; ++i) {
      Point u = qr.next();
      for (int j = 0; j < d; ++j) u[j] = bounds.lo[j] + u[j] * (bounds.hi[j] - bounds.lo[j]);
      grid.push_back(std::move(u));
    }
    kg_eval = std::make_shared<KgEvaluator>(model, grid);
    kg_z.resize(8);
    for (double& z : kg_z) z = rng.normal();
  }

  std::function<double(const Point&)> af;
  switch (spec.kind) {
    case AfKind::EI:
      af = [&](const Point& x) {
        auto p = model.predict(x);
        return ei(p.mu, p.sigma2, ctx.incumbent);
      };
      break;
    case AfKind::PI:
      af = [&](const Point& x) {
        auto p = model.predict(x);
        return pi(p.mu, p.sigma2, ctx.incumbent);
      };
      break;
    case AfKind::UCB:
      af = [&](const Point& x) {
        auto p = model.predict(x);
        return ucb(p.mu, p.sigma2, spec.beta);
      };
      break;
    case AfKind::MES:
      af = [&](const Point& x) {
        auto p = model.predict(x);
        return mes(p.mu, p.sigma2, ctx.mes_samples);
      };
      break;
    case AfKind::TS:
      af = [&](const Point& x) { return (*ts_sample)(x); };
      break;
    case AfKind::KG:
      af = [&](const Point& x) { return kg_eval->evaluate(x, kg_z); };
      break;
    default:
      throw InputError("maximize_af: unreachable kind");
  }

  const int n_cand = static_cast<int>(candidates.size());
  std::vector<double> values(n_cand);
  if (spec.kind == AfKind::EI || spec.kind == AfKind::PI || spec.kind == AfKind::UCB ||
      spec.kind == AfKind::MES) {
    Eigen::MatrixXd Xc(n_cand, d);
    for (int i = 0; i < n_cand; ++i)
      for (int j = 0; j < d; ++j) Xc(i, j) = candidates[i][j];
    Eigen::VectorXd mu, s2;
    model.predict_batch(Xc, mu, s2);
    for (int i = 0; i < n_cand; ++i) {
      switch (spec.kind) {
        case AfKind::EI: values[i] = ei(mu(i), s2(i), ctx.incumbent); break;
        case AfKind::PI: values[i] = pi(mu(i), s2(i), ctx.incumbent); break;
        case AfKind::UCB: values[i] = ucb(mu(i), s2(i), spec.beta); break;
        default: values[i] = mes(mu(i), s2(i), ctx.mes_samples); break;
      }
    }
  } else {
    for (int i = 0; i < n_cand; ++i) values[i] = af(candidates[i]);
  }

  std::vector<int> order(n_cand);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  result.best_raw_value = values[order[0]];

  double best_val = -std::numeric_limits<double>::infinity();
  Point best_x;
  const int k = std::min(n_refine, n_cand);
  for (int r = 0; r < k; ++r) {
    Point x = candidates[order[r]];
    double fx = values[order[r]];
    maxdetail::fd_refine(af, bounds, x, fx);
    if (ctx.exclude && !maxdetail::far_from_all(x, *ctx.exclude)) {
      x = candidates[order[r]];
      fx = values[order[r]];
    }
    if (fx > best_val) {
      best_val = fx;
      best_x = std::move(x);
    }
  }
  result.x = std::move(best_x);
  result.af_value = best_val;
  return result;
}

// Batch selection: kriging believer for EI/UCB/KG (pseudo-observe the
// posterior mean, rank-1 update, repeat); TS draws q independent posterior
// functions.  Pairwise distance >= 1e-6 enforced via candidate dedup.
inline std::vector<Point> batch_select(const GpModel& model, const AcquisitionSpec& spec,
                                       const Bounds& bounds, int q, AcqContext ctx, Rng& rng) {
  if (q < 1) throw InputError("batch_select: q must be >= 1");
  if (spec.kind != AfKind::EI && spec.kind != AfKind::UCB && spec.kind != AfKind::TS &&
      spec.kind != AfKind::KG)
    throw UnsupportedError("batch_select: kind does not support batching");
  std::vector<Point> selected;
  selected.reserve(q);
  ctx.exclude = &selected;
  if (spec.kind == AfKind::TS) {
    for (int i = 0; i < q; ++i)
      selected.push_back(maximize_af(model, spec, bounds, ctx, rng).x);
    return selected;
  }
  GpModel believer = model;
  for (int i = 0; i < q; ++i) {
    MaximizeResult res = maximize_af(believer, spec, bounds, ctx, rng);
    double mu = believer.predict(res.x).mu;
    if (i + 1 < q) {
      believer = believer.condition_on(res.x, mu);
      ctx.incumbent = std::max(ctx.incumbent, mu);
    }
    selected.push_back(std::move(res.x));
  }
  return selected;
}

}  // namespace explora
