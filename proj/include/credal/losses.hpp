#pragma once

// Loss catalog l(theta, z), its subdifferential in theta and the closed-form
// precise properties / Bayes risks the catalog elicits.

#include <string>
#include <string_view>
#include <vector>

#include "credal/core_model.hpp"

namespace credal {

enum class LossKind { squared, absolute, pinball, entropic };

std::string_view to_string(LossKind kind);
/// Throws DomainError on an unknown name.
LossKind loss_kind_from_string(std::string_view name);

/// Validated loss description. Use the named constructors.
class LossSpec {
 public:
  static LossSpec squared() { return LossSpec(LossKind::squared, 0.0, 0.0); }
  static LossSpec absolute() { return LossSpec(LossKind::absolute, 0.0, 0.0); }
  /// tau in (0, 1).
  static LossSpec pinball(double tau);
  /// gamma in (0, inf).
  static LossSpec entropic(double gamma);

  LossKind kind() const noexcept { return kind_; }
  double tau() const noexcept { return tau_; }
  double gamma() const noexcept { return gamma_; }
  bool strictly_convex() const noexcept { return kind_ == LossKind::squared || kind_ == LossKind::entropic; }

  friend bool operator==(const LossSpec&, const LossSpec&) = default;

 private:
  LossSpec(LossKind k, double tau, double gamma) : kind_(k), tau_(tau), gamma_(gamma) {}
  LossKind kind_;
  double tau_;
  double gamma_;
};

/// Closed interval [lo, hi]; lo == hi encodes a point.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  double mid() const noexcept { return 0.5 * (lo + hi); }
  bool contains(double x, double tol = 0.0) const noexcept { return x >= lo - tol && x <= hi + tol; }
  /// Distance from x to the interval (0 inside).
  double distance(double x) const noexcept;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Set-valued property value: sorted, disjoint closed intervals.
class PropertyValueSet {
 public:
  PropertyValueSet() = default;
  /// Sorts and merges overlapping intervals.
  explicit PropertyValueSet(std::vector<Interval> intervals);
  static PropertyValueSet point(double x) { return PropertyValueSet({Interval{x, x}}); }

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  bool empty() const noexcept { return intervals_.empty(); }
  double lo() const { return intervals_.front().lo; }
  double hi() const { return intervals_.back().hi; }
  /// Largest single-interval width.
  double max_width() const;

  bool contains(double x, double tol = 0.0) const;
  double distance(double x) const;
  /// Intersection with [lo, hi]; may be empty.
  PropertyValueSet clipped(double lo, double hi) const;

  friend bool operator==(const PropertyValueSet&, const PropertyValueSet&) = default;

 private:
  std::vector<Interval> intervals_;
};

/// sup_{x in from} dist(x, to). Infinite when `to` is empty and `from` is not.
double one_sided_hausdorff(const PropertyValueSet& from, const PropertyValueSet& to);

double loss_value(const LossSpec& spec, double theta, double z);

/// Full subdifferential of theta -> l(theta, z).
Interval loss_subgradient(const LossSpec& spec, double theta, double z);

/// Minimizer set of theta -> E_P[l(theta, Z)] over the real line.
PropertyValueSet precise_property(const LossSpec& spec, const Distribution& p);

/// min_theta E_P[l(theta, Z)].
double bayes_risk(const LossSpec& spec, const Distribution& p);

/// Set of tau-quantiles {theta : P(Z < theta) <= tau <= P(Z <= theta)}. A CDF
/// value within `cdf_tol` of tau counts as hitting tau, which widens the set to
/// the gap up to the next outcome with positive mass.
Interval quantile_set(const Distribution& p, double tau, double cdf_tol = 1e-12);

/// (1/gamma) log E_P[exp(gamma Z)], evaluated without overflow.
double entropic_risk(const Distribution& p, double gamma);

/// log E_P[exp(gamma Z)], evaluated as a shifted log-sum-exp.
double log_mgf(const Distribution& p, double gamma);

}  // namespace credal
