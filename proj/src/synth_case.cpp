#include "aerofuse/synth_case.hpp"

#include "aerofuse/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace aerofuse {

PlanformGrid PlanformGrid::make(int n_chord, int n_span) {
  if (n_chord < 2 || n_span < 2) {
    throw std::invalid_argument("PlanformGrid: need at least 2 points per direction");
  }
  PlanformGrid grid;
  grid.n_chord = n_chord;
  grid.n_span = n_span;
  const auto total = static_cast<std::size_t>(n_chord) * static_cast<std::size_t>(n_span) * 2;
  grid.points.reserve(total);
  grid.chord_fraction.reserve(total);
  grid.span_fraction.reserve(total);
  grid.sides.reserve(total);

  const double dxc = 1.0 / (n_chord - 1);
  const double ds = 1.0 / (n_span - 1);
  for (Side side : {Side::Upper, Side::Lower}) {
    for (int j = 0; j < n_span; ++j) {
      const double s = j * ds;
      // Trapezoidal quadrature weights; the area element is c(s) dx_c ds.
      const double ws = (j == 0 || j == n_span - 1 ? 0.5 : 1.0) * ds;
      for (int i = 0; i < n_chord; ++i) {
        const double x_c = i * dxc;
        const double wx = (i == 0 || i == n_chord - 1 ? 0.5 : 1.0) * dxc;
        SurfacePoint p;
        p.x = planform_leading_edge(s) + x_c * planform_chord(s);
        p.y = s;
        p.z = 0.0;
        p.nx = 0.0;
        p.ny = 0.0;
        p.nz = side == Side::Upper ? 1.0 : -1.0;
        p.area_weight = wx * ws * planform_chord(s);
        grid.points.push_back(p);
        grid.chord_fraction.push_back(x_c);
        grid.span_fraction.push_back(s);
        grid.sides.push_back(side);
      }
    }
  }
  return grid;
}

double analytic_cp(double x_c, double s, Side side, const FlowCondition& condition,
                   bool deformed, const CaseParams& params) {
  const double alpha_eff =
      deformed ? condition.alpha * (1.0 - params.twist_bias * s * s) : condition.alpha;
  if (side == Side::Lower) {
    return 0.15 * (1.0 - x_c) - 0.02 * alpha_eff * (1.0 - x_c);
  }
  const double shock_pos =
      std::clamp(0.2 + 1.5 * (condition.mach - 0.6) + 0.02 * alpha_eff, 0.05, 0.95);
  const double suction = 0.2 + 0.08 * alpha_eff;
  const double shock_strength = 4.0 * std::max(0.0, condition.mach - 0.72);
  const double shock_factor =
      1.0 + 0.5 * shock_strength * (1.0 - std::tanh((x_c - shock_pos) / params.shock_width));
  return -suction * (1.0 - x_c) * shock_factor + 0.1 * x_c;
}

std::vector<FlowCondition> generate_doe(int num_samples,
                                        std::pair<double, double> mach_range,
                                        std::pair<double, double> alpha_range,
                                        bool transonic_boost, double boost_fraction) {
  if (num_samples < 1) throw std::invalid_argument("generate_doe: num_samples must be >= 1");
  if (boost_fraction < 0.0 || boost_fraction > 1.0) {
    throw std::invalid_argument("generate_doe: boost_fraction must lie in [0, 1]");
  }
  const auto n_boost = transonic_boost
                           ? static_cast<int>(std::llround(boost_fraction * num_samples))
                           : 0;
  std::vector<FlowCondition> conditions;
  conditions.reserve(static_cast<std::size_t>(num_samples));
  for (int i = 1; i <= num_samples; ++i) {
    const double u = halton(static_cast<std::uint64_t>(i), 2);
    const double v = halton(static_cast<std::uint64_t>(i), 3);
    FlowCondition c;
    if (i > num_samples - n_boost) {
      c.mach = 0.8 + 0.1 * u;
    } else {
      c.mach = mach_range.first + (mach_range.second - mach_range.first) * u;
    }
    c.alpha = alpha_range.first + (alpha_range.second - alpha_range.first) * v;
    conditions.push_back(c);
  }
  return conditions;
}

DenseDataset generate_dense(const std::vector<FlowCondition>& conditions,
                            const PlanformGrid& grid, bool deformed, const CaseParams& params) {
  if (conditions.empty()) throw std::invalid_argument("generate_dense: no conditions");
  DenseDataset dense;
  dense.grid = grid.points;
  dense.conditions = conditions;
  dense.values.resize(grid.size(), static_cast<Index>(conditions.size()));
  for (std::size_t j = 0; j < conditions.size(); ++j) {
    for (Index i = 0; i < grid.size(); ++i) {
      const auto k = static_cast<std::size_t>(i);
      dense.values(i, static_cast<Index>(j)) =
          analytic_cp(grid.chord_fraction[k], grid.span_fraction[k], grid.sides[k],
                      conditions[j], deformed, params);
    }
  }
  return dense;
}

SparseDataset extract_sensors(const DenseDataset& dense, const PlanformGrid& grid,
                              int n_sections, int n_chord_per_section, double noise_sd,
                              std::uint64_t seed) {
  if (n_sections < 1 || n_chord_per_section < 1) {
    throw std::invalid_argument("extract_sensors: station counts must be positive");
  }
  if (dense.num_points() != grid.size()) {
    throw std::invalid_argument("extract_sensors: dense dataset does not match grid");
  }

  SparseDataset sparse;
  sparse.conditions = dense.conditions;
  std::vector<Index> picked;

  for (int k = 0; k < n_sections; ++k) {
    const double s_station = (k + 0.5) / n_sections;
    for (Side side : {Side::Upper, Side::Lower}) {
      for (int l = 0; l < n_chord_per_section; ++l) {
        const double xc_station = (l + 0.5) / n_chord_per_section;
        Index best = -1;
        double best_d2 = std::numeric_limits<double>::infinity();
        for (Index i = 0; i < grid.size(); ++i) {
          const auto q = static_cast<std::size_t>(i);
          if (grid.sides[q] != side) continue;
          const double dc = grid.chord_fraction[q] - xc_station;
          const double dsp = grid.span_fraction[q] - s_station;
          const double d2 = dc * dc + dsp * dsp;
          if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
          }
        }
        picked.push_back(best);
        sparse.sensors.push_back(grid.points[static_cast<std::size_t>(best)]);
        sparse.section_ids.push_back(k + 1);
      }
    }
  }

  sparse.values.resize(static_cast<Index>(picked.size()), dense.num_conditions());
  for (std::size_t i = 0; i < picked.size(); ++i) {
    sparse.values.row(static_cast<Index>(i)) = dense.values.row(picked[i]);
  }
  if (noise_sd > 0.0) {
    Rng rng(seed);
    for (Index j = 0; j < sparse.values.cols(); ++j) {
      for (Index i = 0; i < sparse.values.rows(); ++i) {
        sparse.values(i, j) += rng.normal(0.0, noise_sd);
      }
    }
  }
  return sparse;
}

}  // namespace aerofuse
