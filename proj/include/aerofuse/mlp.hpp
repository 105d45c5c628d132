#pragma once

#include "aerofuse/scaler.hpp"
#include "aerofuse/types.hpp"

#include <cstdint>
#include <vector>

namespace aerofuse {

// x for x >= 0, exp(x) - 1 otherwise.
inline double elu(double x) { return x >= 0.0 ? x : std::expm1(x); }

struct Layer {
  Matrix weights;  // (out x in)
  Vector bias;     // (out)
};

// Fully connected cp surrogate: scaled 8-feature input, `num_hidden_layers`
// ELU layers of width `hidden_dim`, linear scalar output. The leading
// `frozen_prefix` layers are excluded from training updates.
struct MlpModel {
  std::vector<Layer> layers;
  int input_dim = kNumFeatures;
  int hidden_dim = 64;
  int num_hidden_layers = 9;
  int output_dim = 1;
  MinMaxScaler scaler;
  int frozen_prefix = 0;

  Index num_layers() const { return static_cast<Index>(layers.size()); }
  Index num_parameters() const;
  Index num_trainable_parameters() const;

  void validate() const;
};

// Fresh model with uniform +-sqrt(6/(fan_in+fan_out)) weights and zero biases.
MlpModel make_mlp(int hidden_dim, int num_hidden_layers, const MinMaxScaler& scaler,
                  std::uint64_t seed);

double forward(const MlpModel& model, const Features& raw);

// Row-wise evaluation of a (k x 8) matrix of raw feature rows.
Vector forward_batch(const MlpModel& model, const Matrix& raw_rows);

// Same, but on rows the scaler has already been applied to. Training caches
// the scaled design matrix and uses this path.
Vector forward_scaled(const MlpModel& model, const Matrix& scaled_rows);

}  // namespace aerofuse
