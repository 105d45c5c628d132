#pragma once

#include "aerofuse/mlp.hpp"

#include <filesystem>

namespace aerofuse {

inline constexpr int kCheckpointFormatVersion = 1;

// JSON checkpoint holding architecture, scaler bounds, frozen_prefix, and all
// weights at full double precision. load(save(m)) is bit-exact.
void save_checkpoint(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_checkpoint(const std::filesystem::path& path);

}  // namespace aerofuse
