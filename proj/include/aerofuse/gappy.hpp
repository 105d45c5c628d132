#pragma once

#include "aerofuse/gpr.hpp"
#include "aerofuse/pod.hpp"
#include "aerofuse/types.hpp"

#include <span>
#include <vector>

namespace aerofuse {

// Sensor-to-grid assignment. Distances are kept for diagnostics.
struct ObservationMap {
  std::vector<Index> grid_indices;
  std::vector<double> distances;
  int duplicate_collisions = 0;  // sensors sharing a grid index

  Index num_sensors() const { return static_cast<Index>(grid_indices.size()); }
};

// Nearest grid point per sensor. The match metric is Euclidean over position
// and unit normal jointly, so coincident points on opposite surface sides
// resolve to the sensor's own side; exact ties fall to the lowest index.
ObservationMap nearest_neighbor_map(std::span<const SurfacePoint> grid,
                                    std::span<const SurfacePoint> sensors);

// Regression of measurements against the observed POD-basis rows. Targets
// are centered by the POD mean at the observed indices.
GprModel fit_gpr(const PodBasis& basis, const ObservationMap& observation,
                 const Vector& measurements, double noise_variance,
                 const GprFitOptions& options = {});

struct FieldPosterior {
  Vector mean;      // length N, POD mean added back
  Vector variance;  // length N, clamped at 0 from below
  double min_preclamp_variance = 0.0;
};

// Posterior over every grid row of the POD basis.
FieldPosterior predict_full_field(const GprModel& model, const PodBasis& basis);

struct GappyDiagnostics {
  Vector singular_values;
  Index rank = 0;
  KernelParams theta;
  double log_marginal = 0.0;
  double jitter = 0.0;
  std::vector<double> sensor_distances;
  int duplicate_collisions = 0;
};

struct FusedField {
  Vector mean;
  Vector variance;
  GappyDiagnostics diagnostics;
};

// End-to-end linear baseline for one flow condition of the sparse dataset:
// build_pod -> nearest_neighbor_map -> fit_gpr -> predict_full_field.
FusedField gappy_fuse(const DenseDataset& dense, const SparseDataset& sparse,
                      Index condition_index, const RankRule& rule, double noise_variance,
                      const GprFitOptions& options = {});

}  // namespace aerofuse
