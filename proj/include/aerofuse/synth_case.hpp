#pragma once

#include "aerofuse/quasirand.hpp"
#include "aerofuse/types.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace aerofuse {

enum class Side { Upper, Lower };

// Tapered swept planform discretized on a regular (chord x span) lattice,
// both surface sides. Chord fraction and span fraction are kept alongside
// the physical points so cp evaluation and sensor placement stay exact.
struct PlanformGrid {
  int n_chord = 0;
  int n_span = 0;
  std::vector<SurfacePoint> points;     // upper block first, then lower
  std::vector<double> chord_fraction;   // x_c in [0,1], per point
  std::vector<double> span_fraction;    // s in [0,1], per point
  std::vector<Side> sides;

  static PlanformGrid make(int n_chord, int n_span);

  Index size() const { return static_cast<Index>(points.size()); }
};

// Local chord and leading edge of the planform at span fraction s.
inline double planform_chord(double s) { return 1.0 - 0.5 * s; }
inline double planform_leading_edge(double s) { return 0.6 * s; }

struct CaseParams {
  double twist_bias = 0.3;    // spanwise twist factor of the deformed variant
  double shock_width = 0.03;  // tanh transition width, chord fractions
  double noise_sd = 0.0;      // measurement noise level
};

// Closed-form surface pressure with a Mach/alpha-controlled shock on the
// upper side. The deformed variant reduces the effective angle of attack
// towards the tip, which shifts the shock and weakens the suction there.
double analytic_cp(double x_c, double s, Side side, const FlowCondition& condition,
                   bool deformed, const CaseParams& params);

// 2-D Halton design over (mach, alpha). With `transonic_boost`, the trailing
// `boost_fraction` of indices has its Mach coordinate remapped into
// [0.8, 0.9] to densify the transonic range.
std::vector<FlowCondition> generate_doe(int num_samples,
                                        std::pair<double, double> mach_range,
                                        std::pair<double, double> alpha_range,
                                        bool transonic_boost, double boost_fraction = 0.4);

DenseDataset generate_dense(const std::vector<FlowCondition>& conditions,
                            const PlanformGrid& grid, bool deformed, const CaseParams& params);

// Sensors at grid points nearest to equispaced span stations
// (k+0.5)/n_sections and equispaced chord stations (l+0.5)/n_chord_per_section,
// on both sides. Section ids are 1-based. Gaussian noise of `noise_sd` is
// added to the cp values with the given seed.
SparseDataset extract_sensors(const DenseDataset& dense, const PlanformGrid& grid,
                              int n_sections = 9, int n_chord_per_section = 14,
                              double noise_sd = 0.0, std::uint64_t seed = 0);

}  // namespace aerofuse
