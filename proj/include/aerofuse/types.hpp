#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace aerofuse {

using Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Input features of the surrogate, in fixed order:
// mach, alpha, x, y, z, nx, ny, nz.
inline constexpr int kNumFeatures = 8;
using Features = Eigen::Matrix<double, kNumFeatures, 1>;

struct FlowCondition {
  double mach = 0.0;   // freestream Mach number
  double alpha = 0.0;  // angle of attack, degrees

  void validate() const {
    if (!std::isfinite(mach) || mach <= 0.0) {
      throw std::invalid_argument("FlowCondition: mach must be finite and positive");
    }
    if (!std::isfinite(alpha)) {
      throw std::invalid_argument("FlowCondition: alpha must be finite");
    }
  }

  bool operator==(const FlowCondition&) const = default;
};

struct SurfacePoint {
  double x = 0.0, y = 0.0, z = 0.0;     // position, model length units
  double nx = 0.0, ny = 0.0, nz = 1.0;  // outward unit normal
  double area_weight = 0.0;             // surface-cell area, >= 0

  void validate() const {
    for (double v : {x, y, z, nx, ny, nz, area_weight}) {
      if (!std::isfinite(v)) throw std::invalid_argument("SurfacePoint: non-finite field");
    }
    const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (std::abs(norm - 1.0) > 1e-9) {
      throw std::invalid_argument("SurfacePoint: normal must have unit length");
    }
    if (area_weight < 0.0) {
      throw std::invalid_argument("SurfacePoint: area_weight must be >= 0");
    }
  }

  bool operator==(const SurfacePoint&) const = default;
};

// One (flow condition, surface point, cp) record; the atomic training row.
struct FieldSample {
  FlowCondition condition;
  SurfacePoint point;
  double cp = 0.0;

  void validate() const {
    condition.validate();
    point.validate();
    if (!std::isfinite(cp)) throw std::invalid_argument("FieldSample: cp must be finite");
  }
};

inline Features feature_row(const FlowCondition& c, const SurfacePoint& p) {
  Features f;
  f << c.mach, c.alpha, p.x, p.y, p.z, p.nx, p.ny, p.nz;
  return f;
}

// Full-grid cp fields for a set of flow conditions sharing one grid.
// values(i, j) is the cp of grid point i at condition j.
struct DenseDataset {
  std::vector<SurfacePoint> grid;
  std::vector<FlowCondition> conditions;
  Matrix values;

  Index num_points() const { return static_cast<Index>(grid.size()); }
  Index num_conditions() const { return static_cast<Index>(conditions.size()); }

  void validate() const {
    if (values.rows() != num_points() || values.cols() != num_conditions()) {
      throw std::invalid_argument("DenseDataset: values shape does not match grid/conditions");
    }
    for (const auto& p : grid) p.validate();
    for (const auto& c : conditions) c.validate();
    if (!values.allFinite()) throw std::invalid_argument("DenseDataset: non-finite cp value");
  }

  std::vector<FieldSample> to_samples() const {
    std::vector<FieldSample> samples;
    samples.reserve(static_cast<std::size_t>(values.size()));
    for (Index j = 0; j < num_conditions(); ++j) {
      for (Index i = 0; i < num_points(); ++i) {
        samples.push_back({conditions[static_cast<std::size_t>(j)],
                           grid[static_cast<std::size_t>(i)], values(i, j)});
      }
    }
    return samples;
  }
};

// Sensor cp records for a set of flow conditions. Each sensor carries a
// spanwise section label. values(i, j) is sensor i at condition j.
struct SparseDataset {
  std::vector<SurfacePoint> sensors;
  std::vector<int> section_ids;
  std::vector<FlowCondition> conditions;
  Matrix values;

  Index num_sensors() const { return static_cast<Index>(sensors.size()); }
  Index num_conditions() const { return static_cast<Index>(conditions.size()); }

  void validate() const {
    if (section_ids.size() != sensors.size()) {
      throw std::invalid_argument("SparseDataset: one section id per sensor required");
    }
    if (values.rows() != num_sensors() || values.cols() != num_conditions()) {
      throw std::invalid_argument("SparseDataset: values shape does not match sensors/conditions");
    }
    for (const auto& p : sensors) p.validate();
    for (const auto& c : conditions) c.validate();
    if (!values.allFinite()) throw std::invalid_argument("SparseDataset: non-finite cp value");
  }

  std::vector<FieldSample> to_samples() const {
    std::vector<FieldSample> samples;
    samples.reserve(static_cast<std::size_t>(values.size()));
    for (Index j = 0; j < num_conditions(); ++j) {
      for (Index i = 0; i < num_sensors(); ++i) {
        samples.push_back({conditions[static_cast<std::size_t>(j)],
                           sensors[static_cast<std::size_t>(i)], values(i, j)});
      }
    }
    return samples;
  }

  // Column of a single condition, by index.
  Vector condition_values(Index j) const { return values.col(j); }

  // Index of a condition matching (mach, alpha) exactly; -1 if absent.
  Index find_condition(const FlowCondition& c) const {
    for (std::size_t j = 0; j < conditions.size(); ++j) {
      if (conditions[j] == c) return static_cast<Index>(j);
    }
    return -1;
  }
};

}  // namespace aerofuse
