#include "credal/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "credal/errors.hpp"
#include "credal/upper_risk.hpp"

namespace credal {

PropertyDomain::PropertyDomain(double l, double h) : lo(l), hi(h) {
  if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
    throw DomainError("property domain requires finite lo < hi");
}

void SolverParams::validate() const {
  if (!(theta_tol >= 1e-12 && std::isfinite(theta_tol))) throw DomainError("theta_tol must be >= 1e-12");
  if (!(value_tol > 0.0)) throw DomainError("value_tol must be positive");
  if (!(flat_tol > 0.0)) throw DomainError("flat_tol must be positive");
  if (max_iters < 1) throw DomainError("max_iters must be positive");
}

double upper_risk(const CredalSet& set, const LossSpec& spec, double theta) {
  return UpperRiskFunction(set, spec)(theta);
}

namespace {

// Locates the switch point of a predicate that is false on the left part of
// [lo, hi] and true on the right part. Both ends must already be checked.
template <class Pred>
double bisect_switch(Pred pred, double lo, double hi, const SolverParams& params, int& iterations) {
  double x = lo, y = hi;
  int steps = 0;
  while (y - x > params.theta_tol) {
    const double mid = 0.5 * (x + y);
    if (mid <= x || mid >= y) break;  // bracket below floating-point resolution
    if (++steps > params.max_iters) {
      iterations += steps;
      throw SolverError("elicit: bisection exceeded " + std::to_string(params.max_iters) + " iterations",
                        {0.5 * (x + y)}, y - x);
    }
    (pred(mid) ? y : x) = mid;
  }
  iterations += steps;
  return 0.5 * (x + y);
}

}  // namespace

MinimaxResult elicit(const CredalSet& set, const LossSpec& spec, const PropertyDomain& domain,
                     const SolverParams& params) {
  params.validate();
  const UpperRiskFunction risk(set, spec);

  auto zero_band = [&](const UpperRiskFunction::Slopes& s) { return params.flat_tol * (1.0 + s.scale); };
  // right slope >= 0: theta is at or past the left end of the minimizer set
  auto past_left_end = [&](double theta) {
    const auto s = risk.slopes(theta);
    return s.right >= -zero_band(s);
  };
  // left slope > 0: theta is strictly past the right end of the minimizer set
  auto past_right_end = [&](double theta) {
    const auto s = risk.slopes(theta);
    return s.left > zero_band(s);
  };

  MinimaxResult out;
  double a, b;
  if (past_left_end(domain.lo)) {
    a = domain.lo;
  } else if (!past_left_end(domain.hi)) {
    a = domain.hi;
  } else {
    a = bisect_switch(past_left_end, domain.lo, domain.hi, params, out.iterations);
  }
  if (past_right_end(domain.lo)) {
    b = domain.lo;
  } else if (!past_right_end(domain.hi)) {
    b = domain.hi;
  } else {
    b = bisect_switch(past_right_end, domain.lo, domain.hi, params, out.iterations);
  }
  if (a > b) a = b = 0.5 * (a + b);

  const double mid = 0.5 * (a + b);
  out.value = std::min({risk(a), risk(b), risk(mid)});
  if (!std::isfinite(out.value))
    throw OverflowError("elicit: upper risk is not finite at the minimizer", {mid},
                        std::numeric_limits<double>::quiet_NaN());
  out.argmin = PropertyValueSet({Interval{a, b}});
  out.active_generators = risk.active(mid, params.value_tol);
  return out;
}

}  // namespace credal
