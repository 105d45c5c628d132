#include "aerofuse/pod.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <stdexcept>

namespace aerofuse {

PodBasis build_pod(const Matrix& snapshots, const RankRule& rule) {
  const Index num_points = snapshots.rows();
  const Index num_snapshots = snapshots.cols();
  if (num_snapshots < 2) throw std::invalid_argument("build_pod: need at least 2 snapshots");

  PodBasis basis;
  basis.mean = snapshots.rowwise().mean();
  const Matrix centered = snapshots.colwise() - basis.mean;

  // Thin SVD; Jacobi is exact enough for the snapshot counts in play and
  // keeps tiny-singular-value modes orthonormal.
  Eigen::JacobiSVD<Matrix> svd(centered, Eigen::ComputeThinU);
  const Vector& sigma = svd.singularValues();

  const Index max_rank = std::min(num_points, num_snapshots);
  basis.singular_values = sigma.head(max_rank);

  // Centering makes exact-rank deficiency common; modes at numerically zero
  // singular values carry no information and are never retained.
  const double sigma_floor = sigma.size() > 0 ? sigma[0] * 1e-12 : 0.0;
  Index effective_rank = 0;
  while (effective_rank < sigma.size() && sigma[effective_rank] > sigma_floor &&
         sigma[effective_rank] > 0.0) {
    ++effective_rank;
  }

  Index rank = 0;
  if (rule.explicit_rank >= 0) {
    if (rule.explicit_rank > max_rank) {
      throw std::invalid_argument("build_pod: requested rank exceeds min(N, n)");
    }
    rank = std::min(rule.explicit_rank, effective_rank);
  } else {
    if (!(rule.energy > 0.0) || rule.energy > 1.0) {
      throw std::invalid_argument("build_pod: energy fraction must lie in (0, 1]");
    }
    const double total_energy = sigma.array().square().sum();
    double captured = 0.0;
    while (rank < effective_rank && captured < rule.energy * total_energy) {
      captured += sigma[rank] * sigma[rank];
      ++rank;
    }
  }

  basis.modes = svd.matrixU().leftCols(rank);
  return basis;
}

PodBasis build_pod(const DenseDataset& dense, const RankRule& rule) {
  dense.validate();
  return build_pod(dense.values, rule);
}

Vector reconstruct(const PodBasis& basis, const Vector& snapshot) {
  if (snapshot.size() != basis.mean.size()) {
    throw std::invalid_argument("reconstruct: snapshot length does not match basis");
  }
  if (basis.rank() == 0) return basis.mean;
  const Vector centered = snapshot - basis.mean;
  return basis.mean + basis.modes * (basis.modes.transpose() * centered);
}

}  // namespace aerofuse
