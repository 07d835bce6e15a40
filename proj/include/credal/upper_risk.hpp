#pragma once

#include <cstddef>
#include <vector>

#include "credal/core_model.hpp"
#include "credal/losses.hpp"

namespace credal {

/// theta -> max_j E_{G_j}[l(theta, Z)] for a fixed credal set and loss.
///
/// The maximum over generators equals the supremum over their convex hull
/// because the expected loss is linear in the distribution. For the entropic
/// loss every generator is summarized by log E[exp(gamma Z)], so risks and
/// slopes are evaluated without forming exp(gamma z) directly.
class UpperRiskFunction {
 public:
  UpperRiskFunction(const CredalSet& set, const LossSpec& spec);

  struct Slopes {
    double left;   ///< left derivative of the upper risk
    double right;  ///< right derivative of the upper risk
    double scale;  ///< magnitude of the summed subgradient terms (noise scale)
  };

  std::size_t generator_count() const noexcept { return set_.size(); }
  const CredalSet& set() const noexcept { return set_; }
  const LossSpec& loss() const noexcept { return spec_; }

  /// E_{G_j}[l(theta, Z)].
  double generator_risk(std::size_t j, double theta) const;
  /// One-sided derivatives of E_{G_j}[l(theta, Z)] as [left, right].
  Interval generator_slope(std::size_t j, double theta) const;

  double operator()(double theta) const;

  /// Generators whose risk lies within floating-point noise of the maximum.
  std::vector<std::size_t> near_active(double theta) const;
  /// Generators whose risk lies within `tol` of the maximum.
  std::vector<std::size_t> active(double theta, double tol) const;

  /// One-sided derivatives of the pointwise maximum: right = max over active
  /// generators of their right derivatives, left = min of their left ones.
  Slopes slopes(double theta) const;

 private:
  CredalSet set_;
  LossSpec spec_;
  std::vector<double> log_mgf_;  // entropic only
  double max_log_mgf_ = 0.0;
};

}  // namespace credal
