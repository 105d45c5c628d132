#include "aerofuse/gappy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace aerofuse {

ObservationMap nearest_neighbor_map(std::span<const SurfacePoint> grid,
                                    std::span<const SurfacePoint> sensors) {
  if (grid.empty() || sensors.empty()) {
    throw std::invalid_argument("nearest_neighbor_map: empty grid or sensor set");
  }
  ObservationMap map;
  map.grid_indices.reserve(sensors.size());
  map.distances.reserve(sensors.size());
  for (const auto& sensor : sensors) {
    Index best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& p = grid[i];
      const double dx = p.x - sensor.x, dy = p.y - sensor.y, dz = p.z - sensor.z;
      const double dnx = p.nx - sensor.nx, dny = p.ny - sensor.ny, dnz = p.nz - sensor.nz;
      const double d2 = dx * dx + dy * dy + dz * dz + dnx * dnx + dny * dny + dnz * dnz;
      if (d2 < best_d2) {
        best_d2 = d2;
        best = static_cast<Index>(i);
      }
    }
    map.grid_indices.push_back(best);
    // Reported distance is positional; the normal term only arbitrates sides.
    const auto& p = grid[static_cast<std::size_t>(best)];
    const double dx = p.x - sensor.x, dy = p.y - sensor.y, dz = p.z - sensor.z;
    map.distances.push_back(std::sqrt(dx * dx + dy * dy + dz * dz));
  }
  std::set<Index> seen;
  for (Index idx : map.grid_indices) {
    if (!seen.insert(idx).second) ++map.duplicate_collisions;
  }
  return map;
}

GprModel fit_gpr(const PodBasis& basis, const ObservationMap& observation,
                 const Vector& measurements, double noise_variance,
                 const GprFitOptions& options) {
  const Index m = observation.num_sensors();
  if (m < 1) throw std::invalid_argument("fit_gpr: need at least one observation");
  if (measurements.size() != m) {
    throw std::invalid_argument("fit_gpr: measurement count does not match observation map");
  }
  Matrix inputs(m, basis.rank());
  Vector centered(m);
  for (Index i = 0; i < m; ++i) {
    const Index j = observation.grid_indices[static_cast<std::size_t>(i)];
    if (j < 0 || j >= basis.mean.size()) {
      throw std::invalid_argument("fit_gpr: observation index outside grid");
    }
    inputs.row(i) = basis.modes.row(j);
    centered[i] = measurements[i] - basis.mean[j];
  }
  return fit_gpr(inputs, centered, noise_variance, options);
}

FieldPosterior predict_full_field(const GprModel& model, const PodBasis& basis) {
  const Index n = basis.mean.size();
  FieldPosterior out;
  out.mean.resize(n);
  out.variance.resize(n);
  out.min_preclamp_variance = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < n; ++i) {
    const Vector x_star = basis.modes.row(i).transpose();
    out.mean[i] = model.predict_mean(x_star) + basis.mean[i];
    const double raw = model.predict_variance(x_star);
    out.min_preclamp_variance = std::min(out.min_preclamp_variance, raw);
    out.variance[i] = std::max(raw, 0.0);
  }
  return out;
}

FusedField gappy_fuse(const DenseDataset& dense, const SparseDataset& sparse,
                      Index condition_index, const RankRule& rule, double noise_variance,
                      const GprFitOptions& options) {
  if (condition_index < 0 || condition_index >= sparse.num_conditions()) {
    throw std::invalid_argument("gappy_fuse: condition index out of range");
  }
  if (sparse.num_sensors() < 1) throw std::invalid_argument("gappy_fuse: no sensors");
  if (sparse.num_sensors() >= dense.num_points()) {
    throw std::invalid_argument("gappy_fuse: sensor count must be below grid size");
  }

  const PodBasis basis = build_pod(dense, rule);

  FusedField fused;
  fused.diagnostics.singular_values = basis.singular_values;
  fused.diagnostics.rank = basis.rank();

  if (basis.rank() == 0) {
    // Degenerate snapshot set: every field equals the mean.
    fused.mean = basis.mean;
    fused.variance = Vector::Zero(basis.mean.size());
    return fused;
  }

  const ObservationMap observation = nearest_neighbor_map(dense.grid, sparse.sensors);
  const Vector measurements = sparse.condition_values(condition_index);
  const GprModel model = fit_gpr(basis, observation, measurements, noise_variance, options);

  FieldPosterior posterior = predict_full_field(model, basis);
  fused.mean = std::move(posterior.mean);
  fused.variance = std::move(posterior.variance);
  fused.diagnostics.theta = model.params();
  fused.diagnostics.log_marginal = model.log_marginal();
  fused.diagnostics.jitter = model.jitter();
  fused.diagnostics.sensor_distances = observation.distances;
  fused.diagnostics.duplicate_collisions = observation.duplicate_collisions;
  return fused;
}

}  // namespace aerofuse
