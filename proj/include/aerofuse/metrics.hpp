#pragma once

#include "aerofuse/types.hpp"

#include <span>
#include <utility>
#include <vector>

namespace aerofuse {

// sqrt( sum w_i (p_i - r_i)^2 / sum w_i ). Weights must be non-negative with
// a positive total.
double area_weighted_rmse(const Vector& predicted, const Vector& reference, const Vector& weights);

// Indices of all points whose spanwise fraction lies within `tolerance` of
// `span_fraction`, ordered by chordwise coordinate (stable for equal x).
// The spanwise fraction of a point is its y position mapped to [0,1] over
// the y extent of `points`; a grid with zero y extent is all at fraction 0.
std::vector<Index> section_cut_indices(std::span<const SurfacePoint> points,
                                       double span_fraction, double tolerance);

// (chordwise coordinate, cp) pairs of the cut through a field sampled on
// `points`.
std::vector<std::pair<double, double>> section_cut(std::span<const SurfacePoint> points,
                                                   const Vector& values,
                                                   double span_fraction,
                                                   double tolerance);

// Sum of absolute successive differences; the oscillation measure used to
// compare reconstructed chordwise profiles.
double total_variation(std::span<const double> values);

}  // namespace aerofuse
