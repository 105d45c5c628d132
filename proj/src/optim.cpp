#include "aerofuse/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace aerofuse {

namespace {

Vector clamp_to_box(Vector x, const Vector& lower, const Vector& upper) {
  for (Index i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lower[i], upper[i]);
  return x;
}

}  // namespace

NelderMeadResult nelder_mead_minimize(const std::function<double(const Vector&)>& objective,
                                      const Vector& start, const Vector& lower,
                                      const Vector& upper, const NelderMeadOptions& options) {
  const Index dim = start.size();
  if (lower.size() != dim || upper.size() != dim) {
    throw std::invalid_argument("nelder_mead: bound dimension mismatch");
  }

  auto safe_eval = [&](const Vector& x) {
    const double v = objective(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };

  // Initial simplex: start plus one step along each axis.
  std::vector<Vector> simplex;
  std::vector<double> values;
  simplex.push_back(clamp_to_box(start, lower, upper));
  values.push_back(safe_eval(simplex[0]));
  for (Index i = 0; i < dim; ++i) {
    Vector v = simplex[0];
    const double span = upper[i] - lower[i];
    double step = options.initial_step;
    if (span > 0.0) step = std::min(step, 0.25 * span);
    v[i] = v[i] + step <= upper[i] ? v[i] + step : v[i] - step;
    simplex.push_back(clamp_to_box(v, lower, upper));
    values.push_back(safe_eval(simplex.back()));
  }

  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  std::vector<std::size_t> rank(simplex.size());

  int iteration = 0;
  for (; iteration < options.max_iterations; ++iteration) {
    std::iota(rank.begin(), rank.end(), 0u);
    std::sort(rank.begin(), rank.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = rank.front(), worst = rank.back();
    const std::size_t second_worst = rank[rank.size() - 2];

    if (std::abs(values[worst] - values[best]) <=
        options.tolerance * (1.0 + std::abs(values[best]))) {
      break;
    }

    Vector centroid = Vector::Zero(dim);
    for (std::size_t i : rank) {
      if (i != worst) centroid += simplex[i];
    }
    centroid /= static_cast<double>(simplex.size() - 1);

    const Vector reflected = clamp_to_box(centroid + alpha * (centroid - simplex[worst]), lower, upper);
    const double reflected_value = safe_eval(reflected);

    if (reflected_value < values[best]) {
      const Vector expanded = clamp_to_box(centroid + gamma * (reflected - centroid), lower, upper);
      const double expanded_value = safe_eval(expanded);
      if (expanded_value < reflected_value) {
        simplex[worst] = expanded;
        values[worst] = expanded_value;
      } else {
        simplex[worst] = reflected;
        values[worst] = reflected_value;
      }
    } else if (reflected_value < values[second_worst]) {
      simplex[worst] = reflected;
      values[worst] = reflected_value;
    } else {
      const Vector contracted =
          clamp_to_box(centroid + rho * (simplex[worst] - centroid), lower, upper);
      const double contracted_value = safe_eval(contracted);
      if (contracted_value < values[worst]) {
        simplex[worst] = contracted;
        values[worst] = contracted_value;
      } else {
        for (std::size_t i : rank) {
          if (i == best) continue;
          simplex[i] = clamp_to_box(simplex[best] + sigma * (simplex[i] - simplex[best]), lower, upper);
          values[i] = safe_eval(simplex[i]);
        }
      }
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  NelderMeadResult result;
  result.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
  result.value = *best_it;
  result.iterations = iteration;
  return result;
}

}  // namespace aerofuse
