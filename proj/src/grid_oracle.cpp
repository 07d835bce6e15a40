#include <algorithm>
#include <cmath>
#include <limits>

#include "credal/errors.hpp"
#include "credal/minimax.hpp"
#include "credal/upper_risk.hpp"

namespace credal {

namespace {

double grid_point(const PropertyDomain& d, std::size_t k, std::size_t n) {
  if (k + 1 == n) return d.hi;
  return d.lo + d.width() * (static_cast<double>(k) / static_cast<double>(n - 1));
}

void evaluate_serial(const UpperRiskFunction& risk, const PropertyDomain& d, std::vector<double>& values) {
  const std::size_t n = values.size();
  for (std::size_t k = 0; k < n; ++k) values[k] = risk(grid_point(d, k, n));
}

void evaluate_parallel(const UpperRiskFunction& risk, const PropertyDomain& d, std::vector<double>& values) {
  const auto n = static_cast<std::ptrdiff_t>(values.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    values[k] = risk(grid_point(d, static_cast<std::size_t>(k), values.size()));
  }
}

}  // namespace

MinimaxResult elicit_grid_oracle(const CredalSet& set, const LossSpec& spec, const PropertyDomain& domain,
                                 std::size_t grid_points, Execution execution) {
  if (grid_points < 2) throw DomainError("grid oracle needs at least two grid points");
  const UpperRiskFunction risk(set, spec);
  std::vector<double> values(grid_points);
  if (execution == Execution::parallel) {
    evaluate_parallel(risk, domain, values);
  } else {
    evaluate_serial(risk, domain, values);
  }

  const double best = *std::min_element(values.begin(), values.end());
  const double band = 1e-12 * (1.0 + std::abs(best));
  std::size_t first = grid_points, last = 0;
  for (std::size_t k = 0; k < grid_points; ++k) {
    if (values[k] <= best + band) {
      first = std::min(first, k);
      last = k;
    }
  }

  MinimaxResult out;
  const double a = grid_point(domain, first, grid_points);
  const double b = grid_point(domain, last, grid_points);
  out.argmin = PropertyValueSet({Interval{a, b}});
  out.value = best;
  out.active_generators = risk.active(grid_point(domain, (first + last) / 2, grid_points), 1e-10);
  out.iterations = static_cast<int>(std::min<std::size_t>(grid_points, std::numeric_limits<int>::max()));
  return out;
}

}  // namespace credal
