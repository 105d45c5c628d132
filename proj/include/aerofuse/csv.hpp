#pragma once

#include "aerofuse/types.hpp"

#include <filesystem>
#include <string>

namespace aerofuse {

// Decimal text of a double with enough digits to round-trip exactly.
std::string format_double(double value);

// Dense dataset CSV. Header:
//   mach,alpha,x,y,z,nx,ny,nz,area_weight,cp
// one row per (condition, grid point), conditions in block order.
void write_dense_csv(const DenseDataset& dense, const std::filesystem::path& path);
DenseDataset read_dense_csv(const std::filesystem::path& path);

// Sparse dataset CSV: dense header plus a trailing integer section_id column.
void write_sparse_csv(const SparseDataset& sparse, const std::filesystem::path& path);
SparseDataset read_sparse_csv(const std::filesystem::path& path);

// Dense prediction field for one condition: mach,alpha,x,y,z,cp_pred.
void write_prediction_csv(const FlowCondition& condition,
                          const std::vector<SurfacePoint>& grid, const Vector& cp,
                          const std::filesystem::path& path);

// Fused field with posterior variance: x,y,z,cp_mean,cp_var.
void write_fused_csv(const std::vector<SurfacePoint>& grid, const Vector& cp_mean,
                     const Vector& cp_var, const std::filesystem::path& path);

}  // namespace aerofuse
