#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "explora/common.hpp"
#include "explora/kernel.hpp"
#include "explora/rng.hpp"

namespace explora {

namespace gpdetail {

inline constexpr double kSqrt5 = 2.2360679774997896964;
inline constexpr double kLog2Pi = 1.8378770664093454836;

inline Eigen::MatrixXd to_matrix(const std::vector<Point>& pts) {
  const int n = static_cast<int>(pts.size());
  const int d = static_cast<int>(pts[0].size());
  Eigen::MatrixXd X(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) X(i, j) = pts[i][j];
  return X;
}

// K(theta) for rows of X under Matérn-5/2 ARD, no noise term.
inline Eigen::MatrixXd kernel_matrix(const Eigen::MatrixXd& X, const KernelParams& p) {
  const int n = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());
  Eigen::MatrixXd R2 = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd c = X.col(j) / p.lengthscales[j];
    R2.noalias() += (c.replicate(1, n) - c.transpose().replicate(n, 1)).array().square().matrix();
  }
  Eigen::ArrayXXd sr = kSqrt5 * R2.array().sqrt();
  return (p.signal_variance * (1.0 + sr + sr.square() / 3.0) * (-sr).exp()).matrix();
}

struct CholResult {
  Eigen::MatrixXd L;
  double jitter = 0.0;
  bool ok = false;
};

// LLT of A + jitter*I with escalation 1e-8 -> 1e-2 (x10 per retry).
inline CholResult chol_with_jitter(const Eigen::MatrixXd& A) {
  CholResult res;
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() == Eigen::Success) {
    res.L = llt.matrixL();
    res.ok = true;
    return res;
  }
  for (double jitter = 1e-8; jitter <= 1e-2 * 1.0000001; jitter *= 10.0) {
    Eigen::MatrixXd Aj = A;
    Aj.diagonal().array() += jitter;
    llt.compute(Aj);
    if (llt.info() == Eigen::Success) {
      res.L = llt.matrixL();
      res.jitter = jitter;
      res.ok = true;
      return res;
    }
  }
  return res;
}

}  // namespace gpdetail

// GP regression model with Matérn-5/2 ARD kernel, zero mean on
// standardized targets.  Immutable after fit.
class GpModel {
 public:
  struct Prediction {
    double mu = 0.0;
    double sigma2 = 0.0;
  };

  GpModel() = default;

  static GpModel fit(const std::vector<Point>& inputs, const std::vector<double>& targets,
                     Rng rng);
  // Skips hyperparameter optimization; standardization behaves as in fit.
  static GpModel from_params(const std::vector<Point>& inputs,
                             const std::vector<double>& targets, const KernelParams& params);

  bool fitted() const { return fitted_; }
  int size() const { return static_cast<int>(y_.size()); }
  int dim() const { return static_cast<int>(X_.cols()); }
  const KernelParams& params() const { return params_; }
  double target_mean() const { return target_mean_; }
  double target_std() const { return target_std_; }
  double log_marginal_likelihood() const { return lml_; }
  double jitter() const { return jitter_; }
  const Eigen::MatrixXd& train_inputs() const { return X_; }
  const Eigen::VectorXd& train_targets_standardized() const { return y_; }
  const Eigen::MatrixXd& chol() const { return L_; }
  const Eigen::VectorXd& alpha() const { return alpha_; }

  Eigen::VectorXd kappa(const Point& x) const {
    require_fitted();
    Eigen::VectorXd k(size());
    for (int i = 0; i < size(); ++i) {
      double r2 = 0.0;
      for (int j = 0; j < dim(); ++j) {
        double s = (x[j] - X_(i, j)) / params_.lengthscales[j];
        r2 += s * s;
      }
      k(i) = matern52_of_r(std::sqrt(r2), params_.signal_variance);
    }
    return k;
  }

  Prediction predict(const Point& x) const {
    require_fitted();
    Eigen::VectorXd k = kappa(x);
    Eigen::VectorXd v = L_.triangularView<Eigen::Lower>().solve(k);
    double mu_std = k.dot(alpha_);
    double s2_std = params_.signal_variance - v.squaredNorm();
    if (s2_std < 0.0) s2_std = 0.0;
    return {target_mean_ + target_std_ * mu_std, target_std_ * target_std_ * s2_std};
  }

  // Vectorized prediction over the rows of Xq (n x d).
  void predict_batch(const Eigen::MatrixXd& Xq, Eigen::VectorXd& mu, Eigen::VectorXd& sigma2) const {
    require_fitted();
    const int n = static_cast<int>(Xq.rows());
    Eigen::MatrixXd R2 = Eigen::MatrixXd::Zero(size(), n);
    for (int j = 0; j < dim(); ++j) {
      Eigen::VectorXd a = X_.col(j) / params_.lengthscales[j];
      Eigen::VectorXd b = Xq.col(j) / params_.lengthscales[j];
      R2.noalias() +=
          (a.replicate(1, n) - b.transpose().replicate(size(), 1)).array().square().matrix();
    }
    Eigen::ArrayXXd sr = gpdetail::kSqrt5 * R2.array().sqrt();
    Eigen::MatrixXd Kx =
        (params_.signal_variance * (1.0 + sr + sr.square() / 3.0) * (-sr).exp()).matrix();
    mu = (target_mean_ + target_std_ * (Kx.transpose() * alpha_).array()).matrix();
    Eigen::MatrixXd V = L_.triangularView<Eigen::Lower>().solve(Kx);
    sigma2 = (target_std_ * target_std_ *
              (params_.signal_variance - V.colwise().squaredNorm().transpose().array()).max(0.0))
                 .matrix();
  }

  // Posterior covariance between two query points (de-standardized).
  double cov(const Point& a, const Point& b) const {
    require_fitted();
    Eigen::VectorXd va = L_.triangularView<Eigen::Lower>().solve(kappa(a));
    Eigen::VectorXd vb = L_.triangularView<Eigen::Lower>().solve(kappa(b));
    return target_std_ * target_std_ * (kernel(a, b, params_) - va.dot(vb));
  }

  // Pseudo-observation extension: appends (x, y) without refitting
  // hyperparameters or standardization constants (rank-1 Cholesky update).
  GpModel condition_on(const Point& x, double y) const {
    require_fitted();
    GpModel next = *this;
    const int t = size();
    Eigen::VectorXd k = kappa(x);
    Eigen::VectorXd l12 = L_.triangularView<Eigen::Lower>().solve(k);
    double diag = params_.signal_variance + params_.noise_variance + jitter_ - l12.squaredNorm();
    double l22 = std::sqrt(std::max(diag, 1e-10));
    next.X_.conservativeResize(t + 1, Eigen::NoChange);
    for (int j = 0; j < dim(); ++j) next.X_(t, j) = x[j];
    next.y_.conservativeResize(t + 1);
    next.y_(t) = (y - target_mean_) / target_std_;
    next.L_.conservativeResize(t + 1, t + 1);
    next.L_.row(t).head(t) = l12.transpose();
    next.L_.col(t).head(t).setZero();
    next.L_(t, t) = l22;
    Eigen::VectorXd tmp = next.L_.triangularView<Eigen::Lower>().solve(next.y_);
    next.alpha_ = next.L_.triangularView<Eigen::Lower>().transpose().solve(tmp);
    return next;
  }

  // Log marginal likelihood of given params on (inputs, targets) after the
  // same standardization fit() applies.
  static double eval_lml(const std::vector<Point>& inputs, const std::vector<double>& targets,
                         const KernelParams& params);

  // Core objective on standardized data: returns LML of log_theta =
  // (log l_1..log l_d, log sf2, log sn2); fills grad if non-null.
  static double lml_log_theta(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                              const std::vector<Eigen::MatrixXd>& diff2,
                              const Eigen::VectorXd& log_theta, Eigen::VectorXd* grad);

 private:
  void require_fitted() const {
    if (!fitted_) throw StateError("GpModel: not fitted");
  }

  bool fitted_ = false;
  KernelParams params_;
  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
  double target_mean_ = 0.0;
  double target_std_ = 1.0;
  Eigen::MatrixXd L_;
  Eigen::VectorXd alpha_;
  double lml_ = 0.0;
  double jitter_ = 0.0;
};

inline double GpModel::lml_log_theta(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                                     const std::vector<Eigen::MatrixXd>& diff2,
                                     const Eigen::VectorXd& log_theta, Eigen::VectorXd* grad) {
  using namespace gpdetail;
  const int t = static_cast<int>(X.rows());
  const int d = static_cast<int>(X.cols());
  const double sf2 = std::exp(log_theta(d));
  const double sn2 = std::exp(log_theta(d + 1));
  Eigen::ArrayXXd R2 = Eigen::ArrayXXd::Zero(t, t);
  std::vector<double> inv_l2(d);
  for (int j = 0; j < d; ++j) {
    inv_l2[j] = std::exp(-2.0 * log_theta(j));
    R2 += diff2[j].array() * inv_l2[j];
  }
  Eigen::ArrayXXd sr = kSqrt5 * R2.sqrt();
  Eigen::ArrayXXd expsr = (-sr).exp();
  Eigen::MatrixXd K = (sf2 * (1.0 + sr + sr.square() / 3.0) * expsr).matrix();
  Eigen::MatrixXd Kt = K;
  Kt.diagonal().array() += sn2;
  CholResult ch = chol_with_jitter(Kt);
  if (!ch.ok) {
    if (grad) grad->setZero();
    return -std::numeric_limits<double>::infinity();
  }
  Eigen::VectorXd tmp = ch.L.triangularView<Eigen::Lower>().solve(y);
  Eigen::VectorXd alpha = ch.L.triangularView<Eigen::Lower>().transpose().solve(tmp);
  double lml = -0.5 * y.dot(alpha) - ch.L.diagonal().array().log().sum() - 0.5 * t * kLog2Pi;
  if (grad) {
    grad->resize(d + 2);
    Eigen::MatrixXd Kinv = Eigen::MatrixXd::Identity(t, t);
    ch.L.triangularView<Eigen::Lower>().solveInPlace(Kinv);
    ch.L.triangularView<Eigen::Lower>().transpose().solveInPlace(Kinv);
    Eigen::MatrixXd A = alpha * alpha.transpose() - Kinv;
    // dK/d log l_j = (5/3) sf2 (1 + sqrt5 r) exp(-sqrt5 r) * s_j
    Eigen::ArrayXXd M = A.array() * ((5.0 / 3.0) * sf2 * (1.0 + sr) * expsr);
    for (int j = 0; j < d; ++j)
      (*grad)(j) = 0.5 * (M * diff2[j].array() * inv_l2[j]).sum();
    (*grad)(d) = 0.5 * (A.array() * K.array()).sum();
    (*grad)(d + 1) = 0.5 * sn2 * A.trace();
  }
  return lml;
}

inline GpModel GpModel::fit(const std::vector<Point>& inputs, const std::vector<double>& targets,
                            Rng rng) {
  using namespace gpdetail;
  if (inputs.size() < 2 || inputs.size() != targets.size())
    throw InputError("GpModel::fit: need >= 2 observations");
  const int t = static_cast<int>(inputs.size());
  const int d = static_cast<int>(inputs[0].size());
  Eigen::MatrixXd X = to_matrix(inputs);
  double mean = 0.0;
  for (double v : targets) mean += v;
  mean /= t;
  double var = 0.0;
  for (double v : targets) var += (v - mean) * (v - mean);
  double sd = std::sqrt(var / t);
  if (sd < 1e-12) sd = 1.0;
  Eigen::VectorXd y(t);
  for (int i = 0; i < t; ++i) y(i) = (targets[i] - mean) / sd;

  std::vector<Eigen::MatrixXd> diff2(d);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd c = X.col(j);
    diff2[j] = (c.replicate(1, t) - c.transpose().replicate(t, 1)).array().square().matrix();
  }

  const double lo_l = std::log(kLengthscaleLo), hi_l = std::log(kLengthscaleHi);
  const double lo_sf = std::log(1e-4), hi_sf = std::log(1e4);
  const double lo_sn = std::log(kNoiseFloor), hi_sn = std::log(1e1);
  auto clamp_theta = [&](Eigen::VectorXd& th) {
    for (int j = 0; j < d; ++j) th(j) = std::clamp(th(j), lo_l, hi_l);
    th(d) = std::clamp(th(d), lo_sf, hi_sf);
    th(d + 1) = std::clamp(th(d + 1), lo_sn, hi_sn);
  };

  std::vector<Eigen::VectorXd> starts;
  Eigen::VectorXd th0(d + 2);
  th0.head(d).setConstant(std::log(0.5 * std::sqrt(static_cast<double>(d))));
  th0(d) = 0.0;
  th0(d + 1) = std::log(1e-3);
  starts.push_back(th0);
  for (int s = 1; s < 8; ++s) {
    Eigen::VectorXd th(d + 2);
    for (int j = 0; j < d; ++j) th(j) = rng.uniform(std::log(0.03), std::log(3.0));
    th(d) = rng.uniform(std::log(0.3), std::log(3.0));
    th(d + 1) = rng.uniform(std::log(1e-6), std::log(1e-2));
    starts.push_back(th);
  }

  double best_lml = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_theta = th0;
  Eigen::VectorXd grad(d + 2), prev_grad(d + 2), step(d + 2);
  for (auto& theta : starts) {
    clamp_theta(theta);
    prev_grad.setZero();
    step.setConstant(0.08);
    double prev_lml = -std::numeric_limits<double>::infinity();
    int stall = 0;
    for (int it = 0; it < 100; ++it) {
      double lml = lml_log_theta(X, y, diff2, theta, &grad);
      if (lml > best_lml) {
        best_lml = lml;
        best_theta = theta;
      }
      if (std::isfinite(lml) && std::isfinite(prev_lml) &&
          std::abs(lml - prev_lml) < 1e-7 * (1.0 + std::abs(lml))) {
        if (++stall >= 3) break;
      } else {
        stall = 0;
      }
      prev_lml = lml;
      if (!std::isfinite(lml)) break;
      double max_step = 0.0;
      for (int i = 0; i < d + 2; ++i) {
        double s = grad(i) * prev_grad(i);
        if (s > 0.0)
          step(i) = std::min(step(i) * 1.2, 0.5);
        else if (s < 0.0) {
          step(i) = std::max(step(i) * 0.5, 1e-5);
          grad(i) = 0.0;
        }
        double delta = (grad(i) > 0.0 ? 1.0 : (grad(i) < 0.0 ? -1.0 : 0.0)) * step(i);
        theta(i) += delta;
        max_step = std::max(max_step, std::abs(delta));
      }
      prev_grad = grad;
      clamp_theta(theta);
      if (max_step < 1e-4) break;
    }
  }

  GpModel model;
  model.params_.lengthscales.resize(d);
  for (int j = 0; j < d; ++j) model.params_.lengthscales[j] = std::exp(best_theta(j));
  model.params_.signal_variance = std::exp(best_theta(d));
  model.params_.noise_variance = std::max(std::exp(best_theta(d + 1)), kNoiseFloor);
  Eigen::MatrixXd K = kernel_matrix(X, model.params_);
  K.diagonal().array() += model.params_.noise_variance;
  CholResult ch = chol_with_jitter(K);
  if (!ch.ok) throw ModelFitError("GpModel::fit: kernel matrix singular after jitter escalation");
  model.fitted_ = true;
  model.X_ = std::move(X);
  model.y_ = std::move(y);
  model.target_mean_ = mean;
  model.target_std_ = sd;
  model.L_ = std::move(ch.L);
  model.jitter_ = ch.jitter;
  Eigen::VectorXd tmp = model.L_.triangularView<Eigen::Lower>().solve(model.y_);
  model.alpha_ = model.L_.triangularView<Eigen::Lower>().transpose().solve(tmp);
  model.lml_ = -0.5 * model.y_.dot(model.alpha_) -
               model.L_.diagonal().array().log().sum() - 0.5 * t * kLog2Pi;
  return model;
}

inline GpModel GpModel::from_params(const std::vector<Point>& inputs,
                                    const std::vector<double>& targets,
                                    const KernelParams& params) {
  using namespace gpdetail;
  if (inputs.size() < 2 || inputs.size() != targets.size())
    throw InputError("GpModel::from_params: need >= 2 observations");
  params.validate();
  if (static_cast<int>(params.lengthscales.size()) != static_cast<int>(inputs[0].size()))
    throw InputError("GpModel::from_params: lengthscale dimension mismatch");
  const int t = static_cast<int>(inputs.size());
  GpModel model;
  model.params_ = params;
  model.X_ = to_matrix(inputs);
  double mean = 0.0;
  for (double v : targets) mean += v;
  mean /= t;
  double var = 0.0;
  for (double v : targets) var += (v - mean) * (v - mean);
  double sd = std::sqrt(var / t);
  if (sd < 1e-12) sd = 1.0;
  model.y_.resize(t);
  for (int i = 0; i < t; ++i) model.y_(i) = (targets[i] - mean) / sd;
  model.target_mean_ = mean;
  model.target_std_ = sd;
  Eigen::MatrixXd K = kernel_matrix(model.X_, model.params_);
  K.diagonal().array() += model.params_.noise_variance;
  CholResult ch = chol_with_jitter(K);
  if (!ch.ok)
    throw ModelFitError("GpModel::from_params: kernel matrix singular after jitter escalation");
  model.fitted_ = true;
  model.L_ = std::move(ch.L);
  model.jitter_ = ch.jitter;
  Eigen::VectorXd tmp = model.L_.triangularView<Eigen::Lower>().solve(model.y_);
  model.alpha_ = model.L_.triangularView<Eigen::Lower>().transpose().solve(tmp);
  model.lml_ = -0.5 * model.y_.dot(model.alpha_) -
               model.L_.diagonal().array().log().sum() - 0.5 * t * kLog2Pi;
  return model;
}

inline double GpModel::eval_lml(const std::vector<Point>& inputs,
                                const std::vector<double>& targets,
                                const KernelParams& params) {
  using namespace gpdetail;
  const int t = static_cast<int>(inputs.size());
  const int d = static_cast<int>(inputs[0].size());
  Eigen::MatrixXd X = to_matrix(inputs);
  double mean = 0.0;
  for (double v : targets) mean += v;
  mean /= t;
  double var = 0.0;
  for (double v : targets) var += (v - mean) * (v - mean);
  double sd = std::sqrt(var / t);
  if (sd < 1e-12) sd = 1.0;
  Eigen::VectorXd y(t);
  for (int i = 0; i < t; ++i) y(i) = (targets[i] - mean) / sd;
  std::vector<Eigen::MatrixXd> diff2(d);
  for (int j = 0; j < d; ++j) {
    Eigen::VectorXd c = X.col(j);
    diff2[j] = (c.replicate(1, t) - c.transpose().replicate(t, 1)).array().square().matrix();
  }
  Eigen::VectorXd th(d + 2);
  for (int j = 0; j < d; ++j) th(j) = std::log(params.lengthscales[j]);
  th(d) = std::log(params.signal_variance);
  th(d + 1) = std::log(params.noise_variance);
  return lml_log_theta(X, y, diff2, th, nullptr);
}

}  // namespace explora
