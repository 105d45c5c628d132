#pragma once

#include "aerofuse/types.hpp"

namespace aerofuse {

// Truncated POD basis of a snapshot matrix: row mean, orthonormal modes, and
// the full non-increasing singular value spectrum of the centered snapshots.
struct PodBasis {
  Vector mean;             // length N
  Matrix modes;            // N x r, orthonormal columns
  Vector singular_values;  // length min(N, n)

  Index rank() const { return modes.cols(); }
};

// Truncation rule: an explicit rank when `explicit_rank >= 0`, otherwise the
// smallest rank whose squared singular values capture `energy` of the total.
struct RankRule {
  Index explicit_rank = -1;
  double energy = 0.999;

  static RankRule explicit_r(Index r) { return {r, 0.0}; }
  static RankRule energy_fraction(double fraction) { return {-1, fraction}; }
};

PodBasis build_pod(const Matrix& snapshots, const RankRule& rule);
PodBasis build_pod(const DenseDataset& dense, const RankRule& rule);

// mean + U_r U_r^T (snapshot - mean): the rank-r approximation of a field.
Vector reconstruct(const PodBasis& basis, const Vector& snapshot);

}  // namespace aerofuse
