#pragma once

#include "aerofuse/mlp.hpp"
#include "aerofuse/types.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace aerofuse {

struct TrainConfig {
  double initial_lr = 1e-3;
  double decay_factor = 0.995;
  int batch_size = 4096;
  int max_epochs = 1000;
  int patience = 100;
  double validation_fraction = 0.2;
  std::uint64_t rng_seed = 0;
  // Retrain on train+validation for the selected epoch count after early
  // stopping. Off by default; meant for the step after hyperparameter
  // selection.
  bool use_validation_in_final_fit = false;
};

// Exponential decay that kicks in at epoch 10: l0 for epochs 1..9, then
// l0 * gamma^(epoch - 9). Epochs are 1-based.
double lr_at_epoch(const TrainConfig& config, int epoch);

struct LayerGrad {
  Matrix d_weights;
  Vector d_bias;
};

// Gradient set for the trainable suffix: grads[i] belongs to layer
// frozen_prefix + i. Frozen layers have no entry.
struct LossAndGrads {
  double loss = 0.0;
  std::vector<LayerGrad> grads;
};

// MSE loss over the batch and its reverse-mode gradients.
LossAndGrads loss_and_gradients(const MlpModel& model, const Matrix& raw_features,
                                const Vector& targets);

struct TrainingHistory {
  std::vector<double> train_loss;  // per epoch
  std::vector<double> val_loss;    // per epoch; NaN when no validation split
  int best_epoch = 0;              // 1-based; 0 if no epochs ran
  bool stopped_early = false;
};

struct TrainResult {
  MlpModel model;
  TrainingHistory history;
};

// Mini-batch Adam with the exponential LR schedule, a seeded random
// train/validation split, and patience-based early stopping on the
// validation loss. Returns the weights of the best validation epoch.
// With no validation rows (validation_fraction 0, or too few samples) the
// run uses the full epoch budget and returns the final weights.
TrainResult train(const MlpModel& model, std::span<const FieldSample> data,
                  const TrainConfig& config);
TrainResult train(const MlpModel& model, const Matrix& raw_features, const Vector& targets,
                  const TrainConfig& config);

}  // namespace aerofuse
