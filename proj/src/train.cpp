#include "aerofuse/train.hpp"

#include "aerofuse/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace aerofuse {

namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;
constexpr double kDivergenceCeiling = 1e6;

// Compensated mean of squared residuals; keeps the full-batch loss
// insensitive to row order at the 1e-12 level.
double mean_squared(const Vector& residuals) {
  double sum = 0.0, comp = 0.0;
  for (Index i = 0; i < residuals.size(); ++i) {
    const double term = residuals[i] * residuals[i] - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  return sum / static_cast<double>(residuals.size());
}

double elu_derivative_from_activation(double a) { return a >= 0.0 ? 1.0 : a + 1.0; }

// Loss and trainable-layer gradients on pre-scaled rows.
LossAndGrads backprop_scaled(const MlpModel& model, const Matrix& scaled_rows,
                             const Vector& targets) {
  const auto num_layers = model.layers.size();
  const Index batch = scaled_rows.rows();

  std::vector<Matrix> activations(num_layers + 1);
  activations[0] = scaled_rows;
  for (std::size_t l = 0; l < num_layers; ++l) {
    const Layer& layer = model.layers[l];
    Matrix z = activations[l] * layer.weights.transpose();
    z.rowwise() += layer.bias.transpose();
    if (l + 1 < num_layers) {
      activations[l + 1] = z.unaryExpr([](double v) { return elu(v); });
    } else {
      activations[l + 1] = std::move(z);
    }
  }

  const Vector residual = activations[num_layers].col(0) - targets;
  LossAndGrads result;
  result.loss = mean_squared(residual);
  if (!std::isfinite(result.loss)) throw std::runtime_error("divergence");

  const auto frozen = static_cast<std::size_t>(model.frozen_prefix);
  result.grads.resize(num_layers - frozen);
  if (frozen == num_layers) return result;

  // delta = dLoss/dz for the current layer, shape (batch x out).
  Matrix delta = (2.0 / static_cast<double>(batch)) * residual;
  for (std::size_t l = num_layers; l-- > frozen;) {
    LayerGrad& grad = result.grads[l - frozen];
    grad.d_weights.noalias() = delta.transpose() * activations[l];
    grad.d_bias = delta.colwise().sum();
    if (l > frozen) {
      Matrix upstream = delta * model.layers[l].weights;
      delta = upstream.cwiseProduct(
          activations[l].unaryExpr([](double a) { return elu_derivative_from_activation(a); }));
    }
  }
  return result;
}

struct AdamState {
  std::vector<Matrix> m_w, v_w;
  std::vector<Vector> m_b, v_b;
  long step = 0;

  explicit AdamState(const MlpModel& model) {
    const auto frozen = static_cast<std::size_t>(model.frozen_prefix);
    for (std::size_t l = frozen; l < model.layers.size(); ++l) {
      m_w.push_back(Matrix::Zero(model.layers[l].weights.rows(), model.layers[l].weights.cols()));
      v_w.push_back(Matrix::Zero(model.layers[l].weights.rows(), model.layers[l].weights.cols()));
      m_b.push_back(Vector::Zero(model.layers[l].bias.size()));
      v_b.push_back(Vector::Zero(model.layers[l].bias.size()));
    }
  }

  void apply(MlpModel& model, const std::vector<LayerGrad>& grads, double lr) {
    ++step;
    const double bias1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(step));
    const double bias2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(step));
    const auto frozen = static_cast<std::size_t>(model.frozen_prefix);
    for (std::size_t i = 0; i < grads.size(); ++i) {
      Layer& layer = model.layers[frozen + i];
      m_w[i] = kAdamBeta1 * m_w[i] + (1.0 - kAdamBeta1) * grads[i].d_weights;
      v_w[i] = kAdamBeta2 * v_w[i] + (1.0 - kAdamBeta2) * grads[i].d_weights.cwiseAbs2();
      layer.weights.array() -=
          lr * (m_w[i].array() / bias1) / ((v_w[i].array() / bias2).sqrt() + kAdamEps);
      m_b[i] = kAdamBeta1 * m_b[i] + (1.0 - kAdamBeta1) * grads[i].d_bias;
      v_b[i] = kAdamBeta2 * v_b[i] + (1.0 - kAdamBeta2) * grads[i].d_bias.cwiseAbs2();
      layer.bias.array() -=
          lr * (m_b[i].array() / bias1) / ((v_b[i].array() / bias2).sqrt() + kAdamEps);
    }
  }
};

Matrix gather_rows(const Matrix& source, std::span<const Index> rows) {
  Matrix out(static_cast<Index>(rows.size()), source.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = source.row(rows[i]);
  return out;
}

Vector gather(const Vector& source, std::span<const Index> rows) {
  Vector out(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out[static_cast<Index>(i)] = source[rows[i]];
  return out;
}

}  // namespace

double lr_at_epoch(const TrainConfig& config, int epoch) {
  if (epoch < 1) throw std::invalid_argument("lr_at_epoch: epoch must be >= 1");
  if (epoch < 10) return config.initial_lr;
  return config.initial_lr * std::pow(config.decay_factor, static_cast<double>(epoch - 9));
}

LossAndGrads loss_and_gradients(const MlpModel& model, const Matrix& raw_features,
                                const Vector& targets) {
  if (raw_features.rows() == 0) throw std::invalid_argument("loss_and_gradients: empty batch");
  if (raw_features.rows() != targets.size()) {
    throw std::invalid_argument("loss_and_gradients: feature/target count mismatch");
  }
  return backprop_scaled(model, model.scaler.transform_rows(raw_features), targets);
}

TrainResult train(const MlpModel& model, const Matrix& raw_features, const Vector& targets,
                  const TrainConfig& config) {
  model.validate();
  const Index n = raw_features.rows();
  if (n == 0) throw std::invalid_argument("empty dataset");
  if (targets.size() != n) throw std::invalid_argument("train: feature/target count mismatch");
  if (config.batch_size < 1) throw std::invalid_argument("train: batch_size must be positive");
  if (config.validation_fraction < 0.0 || config.validation_fraction >= 1.0) {
    throw std::invalid_argument("train: validation_fraction must lie in [0, 1)");
  }

  const Matrix scaled = model.scaler.transform_rows(raw_features);

  Rng rng(config.rng_seed);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  rng.shuffle(order);

  const auto n_val =
      static_cast<std::size_t>(std::floor(config.validation_fraction * static_cast<double>(n)));
  std::vector<Index> val_rows(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_val));
  std::vector<Index> train_rows(order.begin() + static_cast<std::ptrdiff_t>(n_val), order.end());
  const bool has_validation = !val_rows.empty();

  const Matrix val_x = gather_rows(scaled, val_rows);
  const Vector val_y = gather(targets, val_rows);

  const auto batch_size = std::min<std::size_t>(static_cast<std::size_t>(config.batch_size),
                                                train_rows.size());

  TrainResult result;
  result.model = model;
  AdamState adam(result.model);

  double best_val = std::numeric_limits<double>::infinity();
  MlpModel best_model = result.model;
  int best_epoch = 0;
  int epochs_since_best = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const double lr = lr_at_epoch(config, epoch);
    rng.shuffle(train_rows);

    double epoch_loss_sum = 0.0;
    std::size_t epoch_rows = 0;
    for (std::size_t start = 0; start < train_rows.size(); start += batch_size) {
      const std::size_t count = std::min(batch_size, train_rows.size() - start);
      const std::span<const Index> batch_rows(train_rows.data() + start, count);
      const Matrix batch_x = gather_rows(scaled, batch_rows);
      const Vector batch_y = gather(targets, batch_rows);

      LossAndGrads step = backprop_scaled(result.model, batch_x, batch_y);
      if (!std::isfinite(step.loss) || step.loss > kDivergenceCeiling) {
        throw std::runtime_error("divergence at epoch " + std::to_string(epoch));
      }
      adam.apply(result.model, step.grads, lr);
      epoch_loss_sum += step.loss * static_cast<double>(count);
      epoch_rows += count;
    }
    result.history.train_loss.push_back(epoch_loss_sum / static_cast<double>(epoch_rows));

    if (has_validation) {
      const Vector val_residual = forward_scaled(result.model, val_x) - val_y;
      const double val_loss = mean_squared(val_residual);
      result.history.val_loss.push_back(val_loss);
      if (val_loss < best_val) {
        best_val = val_loss;
        best_model = result.model;
        best_epoch = epoch;
        epochs_since_best = 0;
      } else if (++epochs_since_best >= config.patience) {
        result.history.stopped_early = true;
        break;
      }
    } else {
      result.history.val_loss.push_back(std::numeric_limits<double>::quiet_NaN());
      best_epoch = epoch;
    }
  }

  if (has_validation && best_epoch > 0) {
    result.model = std::move(best_model);
  }
  result.history.best_epoch = best_epoch;

  if (config.use_validation_in_final_fit && has_validation && best_epoch > 0) {
    // Refit from the original weights on all rows for the selected epoch
    // count, then return those weights. The early-stopped history is kept.
    TrainConfig refit = config;
    refit.validation_fraction = 0.0;
    refit.max_epochs = best_epoch;
    refit.use_validation_in_final_fit = false;
    TrainResult full = train(model, raw_features, targets, refit);
    result.model = std::move(full.model);
  }
  return result;
}

TrainResult train(const MlpModel& model, std::span<const FieldSample> data,
                  const TrainConfig& config) {
  if (data.empty()) throw std::invalid_argument("empty dataset");
  Matrix features(static_cast<Index>(data.size()), kNumFeatures);
  Vector targets(static_cast<Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    features.row(static_cast<Index>(i)) = feature_row(data[i].condition, data[i].point).transpose();
    targets[static_cast<Index>(i)] = data[i].cp;
  }
  return train(model, features, targets, config);
}

}  // namespace aerofuse
