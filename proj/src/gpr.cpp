#include "aerofuse/gpr.hpp"

#include "aerofuse/optim.hpp"
#include "aerofuse/quasirand.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace aerofuse {

namespace {

constexpr double kJitterStart = 1e-10;
constexpr double kJitterCeiling = 1e-4;

Matrix squared_distance_matrix(const Matrix& inputs) {
  const Index m = inputs.rows();
  const Vector sq_norms = inputs.rowwise().squaredNorm();
  Matrix d2 = -2.0 * (inputs * inputs.transpose());
  d2.colwise() += sq_norms;
  d2.rowwise() += sq_norms.transpose();
  return d2.cwiseMax(0.0);
}

// Cholesky of K + (noise + jitter) I with escalating jitter. Returns the
// jitter that succeeded; throws after the ceiling.
double factorize_with_jitter(const Matrix& kernel, double noise_variance,
                             Eigen::LLT<Matrix>& factorization) {
  double jitter = 0.0;
  while (true) {
    Matrix shifted = kernel;
    shifted.diagonal().array() += noise_variance + jitter;
    factorization.compute(shifted);
    if (factorization.info() == Eigen::Success) return jitter;
    jitter = jitter == 0.0 ? kJitterStart : jitter * 10.0;
    if (jitter > kJitterCeiling) throw std::runtime_error("ill-conditioned kernel matrix");
  }
}

double log_marginal_from_factorization(const Eigen::LLT<Matrix>& factorization,
                                       const Vector& targets, const Vector& alpha) {
  const auto m = static_cast<double>(targets.size());
  const double log_det = 2.0 * factorization.matrixLLT().diagonal().array().log().sum();
  return -0.5 * targets.dot(alpha) - 0.5 * log_det - 0.5 * m * std::log(2.0 * std::numbers::pi);
}

}  // namespace

double kernel(const Vector& x, const Vector& x_prime, const KernelParams& params) {
  const double d2 = (x - x_prime).squaredNorm();
  return params.theta0 * std::exp(-params.theta1 * d2) + params.theta2 * x.dot(x_prime);
}

Matrix kernel_matrix(const Matrix& inputs, const KernelParams& params) {
  const Matrix d2 = squared_distance_matrix(inputs);
  Matrix k = params.theta0 * (-params.theta1 * d2.array()).exp().matrix();
  if (params.theta2 != 0.0) k.noalias() += params.theta2 * (inputs * inputs.transpose());
  return k;
}

double log_marginal_likelihood(const Matrix& inputs, const Vector& targets,
                               const KernelParams& params, double noise_variance) {
  Eigen::LLT<Matrix> factorization;
  Matrix k = kernel_matrix(inputs, params);
  k.diagonal().array() += noise_variance;
  factorization.compute(k);
  if (factorization.info() != Eigen::Success) {
    return -std::numeric_limits<double>::infinity();
  }
  const Vector alpha = factorization.solve(targets);
  return log_marginal_from_factorization(factorization, targets, alpha);
}

Eigen::Vector3d log_marginal_likelihood_gradient(const Matrix& inputs, const Vector& targets,
                                                 const KernelParams& params,
                                                 double noise_variance) {
  const Matrix d2 = squared_distance_matrix(inputs);
  const Matrix rbf = (-params.theta1 * d2.array()).exp().matrix();
  const Matrix dot = inputs * inputs.transpose();

  Matrix k = params.theta0 * rbf + params.theta2 * dot;
  k.diagonal().array() += noise_variance;
  Eigen::LLT<Matrix> factorization(k);
  if (factorization.info() != Eigen::Success) {
    throw std::runtime_error("ill-conditioned kernel matrix");
  }
  const Vector alpha = factorization.solve(targets);
  const Matrix k_inverse = factorization.solve(Matrix::Identity(k.rows(), k.cols()));
  const Matrix inner = alpha * alpha.transpose() - k_inverse;

  // dLML/dtheta_j = 0.5 tr(inner * dK/dtheta_j)
  Eigen::Vector3d gradient;
  gradient[0] = 0.5 * inner.cwiseProduct(rbf).sum();
  gradient[1] = 0.5 * inner.cwiseProduct(-params.theta0 * d2.cwiseProduct(rbf)).sum();
  gradient[2] = 0.5 * inner.cwiseProduct(dot).sum();
  return gradient;
}

GprModel::GprModel(Matrix inputs, Vector targets, KernelParams params, double noise_variance)
    : inputs_(std::move(inputs)),
      targets_(std::move(targets)),
      params_(params),
      noise_variance_(noise_variance) {
  if (inputs_.rows() != targets_.size()) {
    throw std::invalid_argument("GprModel: input/target count mismatch");
  }
  if (inputs_.rows() < 1) throw std::invalid_argument("GprModel: need at least one training point");
  if (!(noise_variance_ > 0.0)) throw std::invalid_argument("GprModel: noise variance must be > 0");
  if (params_.theta0 < 0.0 || params_.theta1 < 0.0 || params_.theta2 < 0.0) {
    throw std::invalid_argument("GprModel: kernel parameters must be >= 0");
  }

  const Matrix k = kernel_matrix(inputs_, params_);
  jitter_ = factorize_with_jitter(k, noise_variance_, factorization_);
  alpha_ = factorization_.solve(targets_);
  log_marginal_ = log_marginal_from_factorization(factorization_, targets_, alpha_);
}

double GprModel::predict_mean(const Vector& x) const {
  const Index m = inputs_.rows();
  Vector k_star(m);
  for (Index i = 0; i < m; ++i) k_star[i] = kernel(inputs_.row(i).transpose(), x, params_);
  return k_star.dot(alpha_);
}

double GprModel::predict_variance(const Vector& x) const {
  const Index m = inputs_.rows();
  Vector k_star(m);
  for (Index i = 0; i < m; ++i) k_star[i] = kernel(inputs_.row(i).transpose(), x, params_);
  Vector v = k_star;
  factorization_.matrixL().solveInPlace(v);
  return kernel(x, x, params_) - v.squaredNorm();
}

GprModel fit_gpr(const Matrix& inputs, const Vector& targets, double noise_variance,
                 const GprFitOptions& options) {
  if (!options.optimize_hyperparams) {
    KernelParams params = options.initial;
    if (!options.use_dot_kernel) params.theta2 = 0.0;
    return GprModel(inputs, targets, params, noise_variance);
  }

  const int dim = options.use_dot_kernel ? 3 : 2;
  const Vector lower = Vector::Constant(dim, options.log10_lower);
  const Vector upper = Vector::Constant(dim, options.log10_upper);

  auto to_params = [&](const Vector& log10_point) {
    KernelParams params;
    params.theta0 = std::pow(10.0, log10_point[0]);
    params.theta1 = std::pow(10.0, log10_point[1]);
    params.theta2 = options.use_dot_kernel ? std::pow(10.0, log10_point[2]) : 0.0;
    return params;
  };
  auto objective = [&](const Vector& log10_point) {
    return -log_marginal_likelihood(inputs, targets, to_params(log10_point), noise_variance);
  };

  // Low-discrepancy starts across the box, plus fixed starts at the center
  // and at each kernel term taken alone.
  std::vector<Vector> starts;
  Vector center = 0.5 * (lower + upper);
  starts.push_back(center);
  if (options.use_dot_kernel) {
    Vector dot_only(3);
    dot_only << options.log10_lower, -1.0, 0.0;  // theta0 ~ 0: dot-product regression
    starts.push_back(dot_only);
    Vector rbf_only(3);
    rbf_only << 0.0, 0.0, options.log10_lower;  // theta2 ~ 0: pure RBF
    starts.push_back(rbf_only);
  } else {
    Vector rbf(2);
    rbf << 0.0, 0.0;
    starts.push_back(rbf);
  }
  constexpr unsigned kPrimes[3] = {2, 3, 5};
  for (std::uint64_t i = 1; static_cast<int>(starts.size()) < options.num_starts; ++i) {
    Vector p(dim);
    for (int d = 0; d < dim; ++d) {
      p[d] = options.log10_lower +
             (options.log10_upper - options.log10_lower) * halton(i, kPrimes[d]);
    }
    starts.push_back(p);
  }

  NelderMeadOptions nm;
  nm.max_iterations = 250;
  nm.initial_step = 0.75;

  double best_value = std::numeric_limits<double>::infinity();
  Vector best_point = starts.front();
  for (const Vector& start : starts) {
    const NelderMeadResult result = nelder_mead_minimize(objective, start, lower, upper, nm);
    if (result.value < best_value) {
      best_value = result.value;
      best_point = result.x;
    }
  }
  if (!std::isfinite(best_value)) throw std::runtime_error("ill-conditioned kernel matrix");
  return GprModel(inputs, targets, to_params(best_point), noise_variance);
}

}  // namespace aerofuse
