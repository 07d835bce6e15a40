#pragma once

// Dense primal simplex for  max c'x  s.t.  A x <= b, x >= 0  with b >= 0, so
// the origin is a feasible start. Bland's rule; sized for a few dozen rows.

#include <vector>

namespace credal::detail {

struct LpResult {
  std::vector<double> x;
  double objective = 0.0;
  int pivots = 0;
  bool bounded = true;
  bool optimal = false;  ///< false when max_pivots ran out or the problem is unbounded
};

LpResult solve_lp(const std::vector<std::vector<double>>& a, const std::vector<double>& b,
                  const std::vector<double>& c, int max_pivots);

}  // namespace credal::detail
