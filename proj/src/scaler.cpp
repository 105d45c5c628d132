#include "aerofuse/scaler.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace aerofuse {

MinMaxScaler MinMaxScaler::from_bounds(const Features& feature_min, const Features& feature_max) {
  MinMaxScaler s;
  for (int k = 0; k < kNumFeatures; ++k) {
    if (!std::isfinite(feature_min[k]) || !std::isfinite(feature_max[k])) {
      throw std::invalid_argument("MinMaxScaler: non-finite bound");
    }
    if (feature_max[k] < feature_min[k]) {
      throw std::invalid_argument("MinMaxScaler: max < min");
    }
  }
  s.min_ = feature_min;
  s.max_ = feature_max;
  s.fitted_ = true;
  return s;
}

void MinMaxScaler::require_fitted() const {
  if (!fitted_) throw std::logic_error("MinMaxScaler: not fitted");
}

Features MinMaxScaler::transform(const Features& raw) const {
  require_fitted();
  Features out;
  for (int k = 0; k < kNumFeatures; ++k) {
    const double range = max_[k] - min_[k];
    out[k] = range > 0.0 ? (raw[k] - min_[k]) / range - 0.5 : 0.0;
  }
  return out;
}

Features MinMaxScaler::inverse(const Features& scaled) const {
  require_fitted();
  Features out;
  for (int k = 0; k < kNumFeatures; ++k) {
    const double range = max_[k] - min_[k];
    out[k] = range > 0.0 ? (scaled[k] + 0.5) * range + min_[k] : min_[k];
  }
  return out;
}

Matrix MinMaxScaler::transform_rows(const Matrix& raw_rows) const {
  require_fitted();
  if (raw_rows.cols() != kNumFeatures) {
    throw std::invalid_argument("MinMaxScaler: expected 8 feature columns");
  }
  Matrix out(raw_rows.rows(), raw_rows.cols());
  for (int k = 0; k < kNumFeatures; ++k) {
    const double range = max_[k] - min_[k];
    if (range > 0.0) {
      out.col(k) = (raw_rows.col(k).array() - min_[k]) / range - 0.5;
    } else {
      out.col(k).setZero();
    }
  }
  return out;
}

MinMaxScaler fit_scaler(std::span<const FieldSample> samples) {
  if (samples.empty()) throw std::invalid_argument("empty dataset");
  Features lo = Features::Constant(std::numeric_limits<double>::infinity());
  Features hi = Features::Constant(-std::numeric_limits<double>::infinity());
  for (const auto& s : samples) {
    const Features f = feature_row(s.condition, s.point);
    if (!f.allFinite()) throw std::invalid_argument("non-finite feature");
    lo = lo.cwiseMin(f);
    hi = hi.cwiseMax(f);
  }
  return MinMaxScaler::from_bounds(lo, hi);
}

MinMaxScaler fit_scaler(const DenseDataset& dense) {
  if (dense.grid.empty() || dense.conditions.empty()) {
    throw std::invalid_argument("empty dataset");
  }
  // Flow features and geometric features vary independently of each other,
  // so extrema over the (condition x point) product separate.
  Features lo = Features::Constant(std::numeric_limits<double>::infinity());
  Features hi = Features::Constant(-std::numeric_limits<double>::infinity());
  auto absorb = [&](const Features& f) {
    if (!f.allFinite()) throw std::invalid_argument("non-finite feature");
    lo = lo.cwiseMin(f);
    hi = hi.cwiseMax(f);
  };
  for (const auto& c : dense.conditions) absorb(feature_row(c, dense.grid.front()));
  const FlowCondition c0 = dense.conditions.front();
  for (const auto& p : dense.grid) absorb(feature_row(c0, p));
  return MinMaxScaler::from_bounds(lo, hi);
}

}  // namespace aerofuse
