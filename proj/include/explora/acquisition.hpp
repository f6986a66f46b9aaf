#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "explora/common.hpp"
#include "explora/gp.hpp"
#include "explora/normal.hpp"
#include "explora/quasirandom.hpp"
#include "explora/rng.hpp"

#include "json.hpp"

namespace explora {

enum class AfKind { EI, PI, UCB, MES, TS, KG, RS, DM };

inline std::string af_kind_name(AfKind k) {
  switch (k) {
    case AfKind::EI: return "ei";
    case AfKind::PI: return "pi";
    case AfKind::UCB: return "ucb";
    case AfKind::MES: return "mes";
    case AfKind::TS: return "ts";
    case AfKind::KG: return "kg";
    case AfKind::RS: return "rs";
    case AfKind::DM: return "dm";
  }
  throw InputError("af_kind_name: bad kind");
}

// Spec grammar: kind[(beta)][+tr][+raasp][+qN], e.g. "ucb(0.1)+tr+q8".
// beta is required for ucb and rejected elsewhere.
struct AcquisitionSpec {
  AfKind kind = AfKind::EI;
  double beta = 0.0;
  int q = 1;
  bool trust_region = false;
  bool raasp = false;

  bool uses_surrogate() const { return kind != AfKind::RS && kind != AfKind::DM; }

  void validate(int d) const {
    if (q < 1) throw InputError("acquisition: q must be >= 1");
    if (kind == AfKind::KG && d > 10)
      throw UnsupportedError("acquisition: kg requires d <= 10");
    if (kind == AfKind::UCB && !(beta >= 0.0))
      throw InputError("acquisition: ucb requires beta >= 0");
  }

  static AcquisitionSpec parse(const std::string& text) {
    AcquisitionSpec spec;
    std::string s;
    for (char c : text)
      if (!std::isspace(static_cast<unsigned char>(c)))
        s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (s.empty()) throw InputError("acquisition spec: empty");
    std::vector<std::string> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      std::size_t next = s.find('+', pos);
      if (next == std::string::npos) {
        parts.push_back(s.substr(pos));
        break;
      }
      parts.push_back(s.substr(pos, next - pos));
      pos = next + 1;
    }
    std::string head = parts[0];
    std::string beta_str;
    std::size_t paren = head.find('(');
    if (paren != std::string::npos) {
      if (head.back() != ')') throw InputError("acquisition spec: unbalanced parentheses");
      beta_str = head.substr(paren + 1, head.size() - paren - 2);
      head = head.substr(0, paren);
    }
    if (head == "ei") spec.kind = AfKind::EI;
    else if (head == "pi") spec.kind = AfKind::PI;
    else if (head == "ucb") spec.kind = AfKind::UCB;
    else if (head == "mes") spec.kind = AfKind::MES;
    else if (head == "ts") spec.kind = AfKind::TS;
    else if (head == "kg") spec.kind = AfKind::KG;
    else if (head == "rs") spec.kind = AfKind::RS;
    else if (head == "dm") spec.kind = AfKind::DM;
    else throw InputError("acquisition spec: unknown kind '" + head + "'");
    if (spec.kind == AfKind::UCB) {
      if (beta_str.empty()) throw InputError("acquisition spec: ucb requires (beta)");
      try {
        std::size_t used = 0;
        spec.beta = std::stod(beta_str, &used);
        if (used != beta_str.size()) throw InputError("");
      } catch (...) {
        throw InputError("acquisition spec: bad beta '" + beta_str + "'");
      }
      if (spec.beta < 0.0) throw InputError("acquisition spec: beta must be >= 0");
    } else if (!beta_str.empty()) {
      throw InputError("acquisition spec: beta only valid for ucb");
    }
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const std::string& m = parts[i];
      if (m == "tr") {
        if (spec.trust_region) throw InputError("acquisition spec: duplicate +tr");
        spec.trust_region = true;
      } else if (m == "raasp") {
        if (spec.raasp) throw InputError("acquisition spec: duplicate +raasp");
        spec.raasp = true;
      } else if (m.size() > 1 && m[0] == 'q') {
        if (spec.q != 1) throw InputError("acquisition spec: duplicate +q");
        try {
          std::size_t used = 0;
          spec.q = std::stoi(m.substr(1), &used);
          if (used != m.size() - 1) throw InputError("");
        } catch (...) {
          throw InputError("acquisition spec: bad batch size '" + m + "'");
        }
        if (spec.q < 1) throw InputError("acquisition spec: q must be >= 1");
      } else {
        throw InputError("acquisition spec: unknown modifier '" + m + "'");
      }
    }
    return spec;
  }

  std::string beta_token() const { return nlohmann::json(beta).dump(); }

  // af part of file names: "ei", "ucb0.1"
  std::string af_token() const {
    std::string s = af_kind_name(kind);
    if (kind == AfKind::UCB) s += beta_token();
    return s;
  }

  // variant part of file names: "none", "tr", "raasp-q8", ...
  std::string variant_token() const {
    std::string s;
    if (trust_region) s = "tr";
    if (raasp) s += (s.empty() ? "" : "-") + std::string("raasp");
    if (q > 1) s += (s.empty() ? "" : "-") + std::string("q") + std::to_string(q);
    return s.empty() ? "none" : s;
  }

  // canonical label, parseable back: "ucb(0.1)+tr+q8"
  std::string label() const {
    std::string s = af_kind_name(kind);
    if (kind == AfKind::UCB) s += "(" + beta_token() + ")";
    if (trust_region) s += "+tr";
    if (raasp) s += "+raasp";
    if (q > 1) s += "+q" + std::to_string(q);
    return s;
  }
};

// alpha_EI(x) = (mu - y*) Phi(z) + sigma phi(z), z = (mu - y*) / sigma
inline double ei(double mu, double sigma2, double incumbent) {
  double sigma = std::sqrt(std::max(sigma2, 0.0));
  double diff = mu - incumbent;
  if (sigma < 1e-15) return std::max(diff, 0.0);
  double z = diff / sigma;
  return diff * normal_cdf(z) + sigma * normal_pdf(z);
}

inline double pi(double mu, double sigma2, double incumbent) {
  double sigma = std::sqrt(std::max(sigma2, 0.0));
  double diff = mu - incumbent;
  if (sigma < 1e-15) return diff > 0.0 ? 1.0 : 0.0;
  return normal_cdf(diff / sigma);
}

inline double ucb(double mu, double sigma2, double beta) {
  return mu + std::sqrt(beta) * std::sqrt(std::max(sigma2, 0.0));
}

// Truncated-normal information form, averaged over sampled maxima:
//   gamma phi(gamma) / (2 Phi(gamma)) - ln Phi(gamma),  gamma = (y* - mu)/sigma
inline double mes(double mu, double sigma2, const std::vector<double>& max_value_samples) {
  if (max_value_samples.empty()) throw InputError("mes: empty max-value sample list");
  double sigma = std::sqrt(std::max(sigma2, 0.0));
  if (sigma < 1e-12) sigma = 1e-12;
  double acc = 0.0;
  for (double ystar : max_value_samples) {
    double gamma = (ystar - mu) / sigma;
    double cdf = std::max(normal_cdf(gamma), 1e-12);
    acc += gamma * normal_pdf(gamma) / (2.0 * cdf) - std::log(cdf);
  }
  return acc / max_value_samples.size();
}

// Gumbel approximation of the posterior max-value distribution on a
// 1000-point quasi-random grid (independence approximation), n_samples
// draws clamped at the incumbent.
inline std::vector<double> sample_max_values(const GpModel& model, int n_samples,
                                             double incumbent, Rng& rng) {
  if (n_samples < 1) throw InputError("sample_max_values: n_samples must be >= 1");
  const int d = model.dim();
  const int grid_n = 1000;
  QuasiRandom qr(d, rng.next_u64());
  Eigen::MatrixXd grid(grid_n, d);
  for (int i = 0; i < grid_n; ++i) {
    Point u = qr.next();
    for (int j = 0; j < d; ++j) grid(i, j) = u[j];
  }
  Eigen::VectorXd mu, s2;
  model.predict_batch(grid, mu, s2);
  Eigen::VectorXd sigma = s2.array().max(1e-18).sqrt().max(1e-9).matrix();
  auto log_f = [&](double v) {
    double acc = 0.0;
    for (int i = 0; i < grid_n; ++i) {
      double c = normal_cdf((v - mu(i)) / sigma(i));
      if (c <= 0.0) return -std::numeric_limits<double>::infinity();
      acc += std::log(c);
    }
    return acc;
  };
  double lo = mu.minCoeff() - 8.0 * sigma.maxCoeff();
  double hi = mu.maxCoeff() + 8.0 * sigma.maxCoeff();
  auto quantile = [&](double p) {
    double target = std::log(p);
    double a = lo, b = hi;
    for (int it = 0; it < 80; ++it) {
      double m = 0.5 * (a + b);
      if (log_f(m) < target) a = m;
      else b = m;
    }
    return 0.5 * (a + b);
  };
  double v25 = quantile(0.25), v50 = quantile(0.5), v75 = quantile(0.75);
  // Gumbel: G(v) = exp(-exp(-(v-a)/b)); quantile v_p = a - b ln(-ln p)
  double b_gum = (v75 - v25) / (std::log(std::log(4.0)) - std::log(std::log(4.0 / 3.0)));
  double a_gum = v50 + b_gum * std::log(std::log(2.0));
  std::vector<double> samples(n_samples);
  for (int s = 0; s < n_samples; ++s) {
    double v;
    if (!(b_gum > 0.0) || !std::isfinite(b_gum)) {
      v = v50;
    } else {
      double u = std::min(std::max(rng.uniform(), 1e-12), 1.0 - 1e-12);
      v = a_gum - b_gum * std::log(-std::log(u));
    }
    samples[s] = std::max(v, incumbent);
  }
  return samples;
}

// Shared precomputation for knowledge-gradient evaluation over a fixed
// inner grid; works in standardized units, scales at the end.
class KgEvaluator {
 public:
  KgEvaluator(const GpModel& model, const std::vector<Point>& inner_grid)
      : model_(model), grid_(inner_grid) {
    const int n = static_cast<int>(inner_grid.size());
    const int t = model.size();
    if (n < 1) throw InputError("KgEvaluator: empty inner grid");
    Kg_.resize(t, n);
    for (int i = 0; i < n; ++i) Kg_.col(i) = model.kappa(inner_grid[i]);
    V_ = model.chol().triangularView<Eigen::Lower>().solve(Kg_);
    mu_grid_ = Kg_.transpose() * model.alpha();
    mu_grid_max_ = mu_grid_.maxCoeff();
  }

  double evaluate(const Point& x, const std::vector<double>& z_fantasies) const {
    const int n = static_cast<int>(grid_.size());
    Eigen::VectorXd kx = model_.kappa(x);
    Eigen::VectorXd vx = model_.chol().triangularView<Eigen::Lower>().solve(kx);
    double s2 = std::max(model_.params().signal_variance - vx.squaredNorm(), 0.0);
    double denom = s2 + model_.params().noise_variance + model_.jitter();
    Eigen::VectorXd kzx(n);
    for (int i = 0; i < n; ++i) kzx(i) = kernel(grid_[i], x, model_.params());
    Eigen::VectorXd covs = kzx - V_.transpose() * vx;
    double acc = 0.0;
    double inv_sqrt_denom = 1.0 / std::sqrt(denom);
    for (double z : z_fantasies) {
      double scale = z * inv_sqrt_denom;
      acc += (mu_grid_.array() + scale * covs.array()).maxCoeff();
    }
    double value = acc / static_cast<double>(z_fantasies.size()) - mu_grid_max_;
    return model_.target_std() * value;
  }

 private:
  const GpModel& model_;
  std::vector<Point> grid_;
  Eigen::MatrixXd Kg_, V_;
  Eigen::VectorXd mu_grid_;
  double mu_grid_max_ = 0.0;
};

// One-lookahead knowledge gradient with n_fantasies Gauss-Hermite-free MC
// fantasies over inner_grid.
inline double kg(const GpModel& model, const Point& x, int n_fantasies,
                 const std::vector<Point>& inner_grid, Rng& rng) {
  if (model.dim() > 10) throw UnsupportedError("kg: requires d <= 10");
  if (n_fantasies < 2) throw InputError("kg: n_fantasies must be >= 2");
  std::vector<double> z(n_fantasies);
  for (double& v : z) v = rng.normal();
  KgEvaluator eval(model, inner_grid);
  return eval.evaluate(x, z);
}

}  // namespace explora
