#pragma once

#include "aerofuse/mlp.hpp"
#include "aerofuse/train.hpp"
#include "aerofuse/types.hpp"

#include <vector>

namespace aerofuse {

enum class Strategy {
  SinglePoint,  // fine-tune and predict at the same flow condition
  MultiPoint,   // fine-tune on several conditions, predict at unseen ones
};

struct FinetuneConfig {
  int frozen_prefix = 2;
  double initial_lr = 3e-5;
  double decay_factor = 0.998;
  int patience = 30;
  Strategy strategy = Strategy::MultiPoint;

  int batch_size = 4096;
  int max_epochs = 2000;
  double validation_fraction = 0.2;
  std::uint64_t rng_seed = 0;
  // Below this row count the validation split is dropped and the run uses
  // the fixed epoch budget instead of patience.
  int small_set_threshold = 50;
  int fixed_budget_epochs = 2000;
};

// Adapt a pre-trained model to measurement data with the leading
// `frozen_prefix` layers frozen. The input scaler is inherited from the base
// model and never refitted, so measurements map into the normalized space
// the frozen layers were trained in.
MlpModel finetune(const MlpModel& base, const SparseDataset& measurements,
                  const FinetuneConfig& config);

struct PredictionField {
  FlowCondition condition;
  Vector cp;  // one value per grid point
};

// Dense predictions at `eval_conditions` on the supplied grid.
// SinglePoint: one independent fine-tune per condition, each on that
// condition's measurements only. MultiPoint: one fine-tune on all
// measurement conditions, then direct evaluation at each eval condition.
std::vector<PredictionField> run_strategy(const MlpModel& base, const SparseDataset& measurements,
                                          const std::vector<FlowCondition>& eval_conditions,
                                          const std::vector<SurfacePoint>& grid,
                                          const FinetuneConfig& config);

}  // namespace aerofuse
