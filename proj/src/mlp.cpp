#include "aerofuse/mlp.hpp"

#include "aerofuse/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace aerofuse {

Index MlpModel::num_parameters() const {
  Index count = 0;
  for (const auto& layer : layers) count += layer.weights.size() + layer.bias.size();
  return count;
}

Index MlpModel::num_trainable_parameters() const {
  Index count = 0;
  for (std::size_t l = static_cast<std::size_t>(frozen_prefix); l < layers.size(); ++l) {
    count += layers[l].weights.size() + layers[l].bias.size();
  }
  return count;
}

void MlpModel::validate() const {
  if (hidden_dim < 1 || num_hidden_layers < 1) {
    throw std::invalid_argument("MlpModel: hidden_dim and num_hidden_layers must be positive");
  }
  const auto expected_layers = static_cast<std::size_t>(num_hidden_layers) + 1;
  if (layers.size() != expected_layers) {
    throw std::invalid_argument("MlpModel: layer count must be num_hidden_layers + 1");
  }
  if (frozen_prefix < 0 || static_cast<std::size_t>(frozen_prefix) > layers.size()) {
    throw std::invalid_argument("MlpModel: frozen_prefix out of range");
  }
  Index in = input_dim;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const Index out = l + 1 == layers.size() ? output_dim : hidden_dim;
    if (layers[l].weights.rows() != out || layers[l].weights.cols() != in ||
        layers[l].bias.size() != out) {
      throw std::invalid_argument("MlpModel: layer " + std::to_string(l) + " has wrong shape");
    }
    in = out;
  }
  if (!scaler.fitted()) throw std::invalid_argument("MlpModel: scaler not fitted");
}

MlpModel make_mlp(int hidden_dim, int num_hidden_layers, const MinMaxScaler& scaler,
                  std::uint64_t seed) {
  if (hidden_dim < 1 || num_hidden_layers < 1) {
    throw std::invalid_argument("make_mlp: hidden_dim and num_hidden_layers must be positive");
  }
  MlpModel model;
  model.hidden_dim = hidden_dim;
  model.num_hidden_layers = num_hidden_layers;
  model.scaler = scaler;

  Rng rng(seed);
  Index in = model.input_dim;
  for (int l = 0; l <= num_hidden_layers; ++l) {
    const Index out = l == num_hidden_layers ? model.output_dim : hidden_dim;
    const double bound = std::sqrt(6.0 / static_cast<double>(in + out));
    Layer layer;
    layer.weights.resize(out, in);
    for (Index r = 0; r < out; ++r) {
      for (Index c = 0; c < in; ++c) layer.weights(r, c) = rng.uniform(-bound, bound);
    }
    layer.bias = Vector::Zero(out);
    model.layers.push_back(std::move(layer));
    in = out;
  }
  model.validate();
  return model;
}

Vector forward_scaled(const MlpModel& model, const Matrix& scaled_rows) {
  if (scaled_rows.cols() != model.input_dim) {
    throw std::invalid_argument("forward: expected 8 feature columns");
  }
  Matrix h = scaled_rows;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const Layer& layer = model.layers[l];
    if (layer.weights.cols() != h.cols()) throw std::invalid_argument("forward: shape mismatch");
    Matrix z = h * layer.weights.transpose();
    z.rowwise() += layer.bias.transpose();
    if (l + 1 < model.layers.size()) {
      h = z.unaryExpr([](double v) { return elu(v); });
    } else {
      h = std::move(z);
    }
  }
  return h.col(0);
}

Vector forward_batch(const MlpModel& model, const Matrix& raw_rows) {
  return forward_scaled(model, model.scaler.transform_rows(raw_rows));
}

double forward(const MlpModel& model, const Features& raw) {
  Matrix row(1, kNumFeatures);
  row.row(0) = raw.transpose();
  return forward_batch(model, row)[0];
}

}  // namespace aerofuse
