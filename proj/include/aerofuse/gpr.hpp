#pragma once

#include "aerofuse/types.hpp"

#include <Eigen/Cholesky>

namespace aerofuse {

// k(x, x') = theta0 * exp(-theta1 * |x - x'|^2) + theta2 * x.x'
struct KernelParams {
  double theta0 = 1.0;
  double theta1 = 1.0;
  double theta2 = 1.0;
};

double kernel(const Vector& x, const Vector& x_prime, const KernelParams& params);

Matrix kernel_matrix(const Matrix& inputs, const KernelParams& params);

double log_marginal_likelihood(const Matrix& inputs, const Vector& targets,
                               const KernelParams& params, double noise_variance);

// d(log marginal likelihood)/d(theta0, theta1, theta2).
Eigen::Vector3d log_marginal_likelihood_gradient(const Matrix& inputs, const Vector& targets,
                                                 const KernelParams& params,
                                                 double noise_variance);

struct GprFitOptions {
  bool optimize_hyperparams = true;
  KernelParams initial;      // used directly when optimize_hyperparams is false
  bool use_dot_kernel = true;  // when false, theta2 is pinned to 0
  int num_starts = 8;
  double log10_lower = -6.0;  // search box for each theta, in log10
  double log10_upper = 3.0;
};

// Fitted Gaussian process on generic inputs. `targets` are stored as given;
// callers that regress centered quantities subtract/add their offset outside.
class GprModel {
 public:
  GprModel(Matrix inputs, Vector targets, KernelParams params, double noise_variance);

  double predict_mean(const Vector& x) const;
  // Posterior variance, unclamped; slightly negative values signal
  // conditioning limits and are the caller's to clamp.
  double predict_variance(const Vector& x) const;

  const Matrix& inputs() const { return inputs_; }
  const Vector& targets() const { return targets_; }
  const KernelParams& params() const { return params_; }
  double noise_variance() const { return noise_variance_; }
  double log_marginal() const { return log_marginal_; }
  double jitter() const { return jitter_; }
  Index num_training_points() const { return inputs_.rows(); }

 private:
  Matrix inputs_;   // m x r
  Vector targets_;  // m
  KernelParams params_;
  double noise_variance_;
  double jitter_ = 0.0;
  Eigen::LLT<Matrix> factorization_;  // of K + (noise + jitter) I
  Vector alpha_;                      // (K + noise I)^-1 targets
  double log_marginal_ = 0.0;
};

// Fit on generic inputs; kernel hyperparameters are optimized by maximizing
// the log marginal likelihood with multi-start Nelder-Mead in log10 space
// unless options say otherwise.
GprModel fit_gpr(const Matrix& inputs, const Vector& targets, double noise_variance,
                 const GprFitOptions& options = {});

}  // namespace aerofuse
