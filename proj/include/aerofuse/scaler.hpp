#pragma once

#include "aerofuse/types.hpp"

#include <span>

namespace aerofuse {

// Per-feature affine map taking the fitted minimum to -0.5 and the fitted
// maximum to +0.5. Zero-range features map to 0.0. Inputs outside the fitted
// range extrapolate linearly beyond +-0.5 rather than clamping, so that
// out-of-envelope predictions see undistorted coordinates.
class MinMaxScaler {
 public:
  MinMaxScaler() = default;

  static MinMaxScaler from_bounds(const Features& feature_min, const Features& feature_max);

  bool fitted() const { return fitted_; }
  const Features& feature_min() const { return min_; }
  const Features& feature_max() const { return max_; }

  Features transform(const Features& raw) const;
  Features inverse(const Features& scaled) const;

  // Row-wise transform of a (k x 8) matrix of raw feature rows.
  Matrix transform_rows(const Matrix& raw_rows) const;

  bool operator==(const MinMaxScaler&) const = default;

 private:
  void require_fitted() const;

  Features min_ = Features::Zero();
  Features max_ = Features::Zero();
  bool fitted_ = false;
};

MinMaxScaler fit_scaler(std::span<const FieldSample> samples);
MinMaxScaler fit_scaler(const DenseDataset& dense);

}  // namespace aerofuse
