#pragma once

// Gamma-maximin elicitation: the minimizer set of the upper risk
//   theta -> sup_{P in set} E_P[l(theta, Z)]
// over a compact interval of property values.

#include <cstddef>
#include <vector>

#include "credal/core_model.hpp"
#include "credal/losses.hpp"

namespace credal {

/// Compact property domain [lo, hi], lo < hi.
struct PropertyDomain {
  PropertyDomain(double lo, double hi);
  double lo;
  double hi;
  double width() const noexcept { return hi - lo; }
};

struct SolverParams {
  double theta_tol = 1e-9;  ///< bracket width at which a minimizer endpoint is accepted
  double value_tol = 1e-10; ///< objective tolerance (activity, certificates)
  /// One-sided slopes with |slope| <= flat_tol * (1 + slope scale) count as
  /// zero when the minimizer set is widened to a flat region.
  double flat_tol = 1e-12;
  int max_iters = 200;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

struct MinimaxResult {
  PropertyValueSet argmin;
  double value = 0.0;
  std::vector<std::size_t> active_generators;
  int iterations = 0;
};

enum class Execution { serial, parallel };

double upper_risk(const CredalSet& set, const LossSpec& spec, double theta);

/// Minimizer set of the upper risk over `domain`.
///
/// The upper risk is convex, so its minimizer set is an interval [a, b] with
/// a = inf{theta : right slope >= 0} and b = sup{theta : left slope <= 0}.
/// Both endpoints are located by bisection on the one-sided slopes of the
/// active generators. Throws SolverError when a bisection exhausts
/// `max_iters`, OverflowError when the risk at the minimizer is not finite.
MinimaxResult elicit(const CredalSet& set, const LossSpec& spec, const PropertyDomain& domain,
                     const SolverParams& params = {});

/// Brute-force reference: evaluates the upper risk on `grid_points` evenly
/// spaced points and reports the span of grid points whose value lies within
/// 1e-12 * (1 + |min|) of the smallest one.
MinimaxResult elicit_grid_oracle(const CredalSet& set, const LossSpec& spec, const PropertyDomain& domain,
                                 std::size_t grid_points, Execution execution = Execution::parallel);

}  // namespace credal
