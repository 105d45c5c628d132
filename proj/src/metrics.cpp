#include "aerofuse/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace aerofuse {

double area_weighted_rmse(const Vector& predicted, const Vector& reference, const Vector& weights) {
  const Index n = predicted.size();
  if (n < 1 || reference.size() != n || weights.size() != n) {
    throw std::invalid_argument("area_weighted_rmse: length mismatch");
  }
  if ((weights.array() < 0.0).any()) {
    throw std::invalid_argument("area_weighted_rmse: negative weight");
  }
  double weighted_sq = 0.0, total_weight = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double d = predicted[i] - reference[i];
    weighted_sq += weights[i] * d * d;
    total_weight += weights[i];
  }
  if (total_weight <= 0.0) {
    throw std::invalid_argument("area_weighted_rmse: zero total weight");
  }
  return std::sqrt(weighted_sq / total_weight);
}

std::vector<Index> section_cut_indices(std::span<const SurfacePoint> points,
                                       double span_fraction, double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("section_cut: tolerance must be > 0");
  if (points.empty()) return {};

  double y_min = std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();
  for (const auto& p : points) {
    y_min = std::min(y_min, p.y);
    y_max = std::max(y_max, p.y);
  }
  const double extent = y_max - y_min;

  std::vector<Index> hits;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double s = extent > 0.0 ? (points[i].y - y_min) / extent : 0.0;
    if (std::abs(s - span_fraction) <= tolerance) hits.push_back(static_cast<Index>(i));
  }
  std::stable_sort(hits.begin(), hits.end(), [&](Index a, Index b) {
    return points[static_cast<std::size_t>(a)].x < points[static_cast<std::size_t>(b)].x;
  });
  return hits;
}

std::vector<std::pair<double, double>> section_cut(std::span<const SurfacePoint> points,
                                                   const Vector& values,
                                                   double span_fraction,
                                                   double tolerance) {
  if (values.size() != static_cast<Index>(points.size())) {
    throw std::invalid_argument("section_cut: values length does not match points");
  }
  std::vector<std::pair<double, double>> cut;
  for (Index i : section_cut_indices(points, span_fraction, tolerance)) {
    cut.emplace_back(points[static_cast<std::size_t>(i)].x, values[i]);
  }
  return cut;
}

double total_variation(std::span<const double> values) {
  double tv = 0.0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    tv += std::abs(values[i] - values[i - 1]);
  }
  return tv;
}

}  // namespace aerofuse
