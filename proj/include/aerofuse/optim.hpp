#pragma once

#include "aerofuse/types.hpp"

#include <functional>

namespace aerofuse {

struct NelderMeadOptions {
  int max_iterations = 400;
  double initial_step = 0.5;
  double tolerance = 1e-10;  // simplex value spread at which to stop
};

struct NelderMeadResult {
  Vector x;
  double value = 0.0;
  int iterations = 0;
};

// Derivative-free simplex minimization inside the box [lower, upper];
// candidate points are clamped to the box.
NelderMeadResult nelder_mead_minimize(const std::function<double(const Vector&)>& objective,
                                      const Vector& start, const Vector& lower,
                                      const Vector& upper,
                                      const NelderMeadOptions& options = {});

}  // namespace aerofuse
