#include "aerofuse/transfer.hpp"

#include <algorithm>
#include <stdexcept>

namespace aerofuse {

namespace {

SparseDataset select_condition(const SparseDataset& measurements, Index j) {
  SparseDataset one;
  one.sensors = measurements.sensors;
  one.section_ids = measurements.section_ids;
  one.conditions = {measurements.conditions[static_cast<std::size_t>(j)]};
  one.values = measurements.values.col(j);
  return one;
}

Matrix grid_feature_rows(const FlowCondition& condition, const std::vector<SurfacePoint>& grid) {
  Matrix rows(static_cast<Index>(grid.size()), kNumFeatures);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    rows.row(static_cast<Index>(i)) = feature_row(condition, grid[i]).transpose();
  }
  return rows;
}

}  // namespace

MlpModel finetune(const MlpModel& base, const SparseDataset& measurements,
                  const FinetuneConfig& config) {
  base.validate();
  if (measurements.num_sensors() == 0 || measurements.num_conditions() == 0) {
    throw std::invalid_argument("empty measurements");
  }
  if (config.strategy == Strategy::SinglePoint && measurements.num_conditions() != 1) {
    throw std::invalid_argument(
        "single-point strategy requires measurements for exactly one condition");
  }
  if (config.frozen_prefix < 0 ||
      static_cast<std::size_t>(config.frozen_prefix) > base.layers.size()) {
    throw std::invalid_argument("finetune: frozen_prefix out of range");
  }

  MlpModel model = base;
  model.frozen_prefix = config.frozen_prefix;

  TrainConfig tc;
  tc.initial_lr = config.initial_lr;
  tc.decay_factor = config.decay_factor;
  tc.batch_size = config.batch_size;
  tc.max_epochs = config.max_epochs;
  tc.patience = config.patience;
  tc.validation_fraction = config.validation_fraction;
  tc.rng_seed = config.rng_seed;

  const auto samples = measurements.to_samples();
  if (static_cast<int>(samples.size()) < config.small_set_threshold) {
    // Too few rows for a meaningful held-out split; train a fixed budget,
    // still capped by the caller's epoch limit.
    tc.validation_fraction = 0.0;
    tc.max_epochs = std::min(config.max_epochs, config.fixed_budget_epochs);
  }

  TrainResult result = train(model, samples, tc);
  return std::move(result.model);
}

std::vector<PredictionField> run_strategy(const MlpModel& base, const SparseDataset& measurements,
                                          const std::vector<FlowCondition>& eval_conditions,
                                          const std::vector<SurfacePoint>& grid,
                                          const FinetuneConfig& config) {
  std::vector<PredictionField> fields;
  fields.reserve(eval_conditions.size());

  if (config.strategy == Strategy::MultiPoint) {
    const MlpModel tuned = finetune(base, measurements, config);
    for (const auto& condition : eval_conditions) {
      fields.push_back({condition, forward_batch(tuned, grid_feature_rows(condition, grid))});
    }
    return fields;
  }

  // SinglePoint: each condition gets its own fine-tune from the same base.
  for (const auto& condition : eval_conditions) {
    const Index j = measurements.find_condition(condition);
    if (j < 0) {
      throw std::invalid_argument("single-point strategy: no measurements for requested condition");
    }
    const MlpModel tuned = finetune(base, select_condition(measurements, j), config);
    fields.push_back({condition, forward_batch(tuned, grid_feature_rows(condition, grid))});
  }
  return fields;
}

}  // namespace aerofuse
