#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "explora/gp.hpp"
#include "explora/rng.hpp"

namespace explora {

inline constexpr int kRffFeatures = 500;

// Pathwise posterior function draw: a random-Fourier-feature prior sample
// corrected to the posterior via
//   f(x) = prior(x) + kappa_t(x)^T (K + noise I)^{-1} (y - prior(X) - eps).
// Deterministic given the seed; callable concurrently once built.
class PosteriorSample {
 public:
  PosteriorSample(const GpModel& model, Rng rng)
      : X_(model.train_inputs()),
        lengthscales_(model.params().lengthscales),
        target_mean_(model.target_mean()),
        target_std_(model.target_std()) {
    if (!model.fitted()) throw StateError("PosteriorSample: model not fitted");
    const int d = model.dim();
    const int t = model.size();
    const double sf2 = model.params().signal_variance;
    const double sn2 = model.params().noise_variance;
    Omega_.resize(kRffFeatures, d);
    phase_.resize(kRffFeatures);
    w_.resize(kRffFeatures);
    // Matérn-5/2 spectral draw: omega_j = g_j * sqrt(5/q) / l_j with
    // q ~ chi^2(5) shared across dimensions within a feature.
    for (int m = 0; m < kRffFeatures; ++m) {
      double q = rng.chi_squared(5);
      double scale = std::sqrt(5.0 / q);
      for (int j = 0; j < d; ++j) Omega_(m, j) = rng.normal() * scale / lengthscales_[j];
      phase_(m) = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
      w_(m) = rng.normal();
    }
    amp_ = std::sqrt(2.0 * sf2 / kRffFeatures);
    // residual coefficients
    Eigen::VectorXd prior_at_train(t);
    Eigen::MatrixXd proj = Omega_ * X_.transpose();  // M x t
    for (int i = 0; i < t; ++i) {
      double s = 0.0;
      for (int m = 0; m < kRffFeatures; ++m) s += w_(m) * std::cos(proj(m, i) + phase_(m));
      prior_at_train(i) = amp_ * s;
    }
    Eigen::VectorXd eps(t);
    double sn = std::sqrt(sn2);
    for (int i = 0; i < t; ++i) eps(i) = sn * rng.normal();
    Eigen::VectorXd resid = model.train_targets_standardized() - prior_at_train - eps;
    Eigen::VectorXd tmp = model.chol().triangularView<Eigen::Lower>().solve(resid);
    coef_ = model.chol().triangularView<Eigen::Lower>().transpose().solve(tmp);
    sf2_ = sf2;
  }

  double operator()(const Point& x) const {
    const int d = static_cast<int>(X_.cols());
    Eigen::Map<const Eigen::VectorXd> xv(x.data(), d);
    Eigen::VectorXd proj = Omega_ * xv;
    double prior = 0.0;
    for (int m = 0; m < kRffFeatures; ++m) prior += w_(m) * std::cos(proj(m) + phase_(m));
    prior *= amp_;
    double corr = 0.0;
    for (int i = 0; i < static_cast<int>(X_.rows()); ++i) {
      double r2 = 0.0;
      for (int j = 0; j < d; ++j) {
        double s = (x[j] - X_(i, j)) / lengthscales_[j];
        r2 += s * s;
      }
      corr += matern52_of_r(std::sqrt(r2), sf2_) * coef_(i);
    }
    return target_mean_ + target_std_ * (prior + corr);
  }

 private:
  Eigen::MatrixXd X_;
  std::vector<double> lengthscales_;
  double target_mean_, target_std_;
  Eigen::MatrixXd Omega_;
  Eigen::VectorXd phase_, w_, coef_;
  double amp_ = 0.0, sf2_ = 1.0;
};

}  // namespace explora
