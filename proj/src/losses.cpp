#include "credal/losses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "credal/errors.hpp"

namespace credal {

std::string_view to_string(LossKind kind) {
  switch (kind) {
    case LossKind::squared: return "squared";
    case LossKind::absolute: return "absolute";
    case LossKind::pinball: return "pinball";
    case LossKind::entropic: return "entropic";
  }
  return "unknown";
}

LossKind loss_kind_from_string(std::string_view name) {
  for (auto k : {LossKind::squared, LossKind::absolute, LossKind::pinball, LossKind::entropic}) {
    if (name == to_string(k)) return k;
  }
  throw DomainError("unknown loss kind '" + std::string(name) + "'");
}

LossSpec LossSpec::pinball(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("pinball loss requires tau in (0, 1)");
  return LossSpec(LossKind::pinball, tau, 0.0);
}

LossSpec LossSpec::entropic(double gamma) {
  if (!(gamma > 0.0 && std::isfinite(gamma))) throw DomainError("entropic loss requires gamma in (0, inf)");
  return LossSpec(LossKind::entropic, 0.0, gamma);
}

double Interval::distance(double x) const noexcept {
  if (x < lo) return lo - x;
  if (x > hi) return x - hi;
  return 0.0;
}

PropertyValueSet::PropertyValueSet(std::vector<Interval> intervals) {
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& iv : intervals) {
    if (!intervals_.empty() && iv.lo <= intervals_.back().hi) {
      intervals_.back().hi = std::max(intervals_.back().hi, iv.hi);
    } else {
      intervals_.push_back(iv);
    }
  }
}

double PropertyValueSet::max_width() const {
  double w = 0.0;
  for (const auto& iv : intervals_) w = std::max(w, iv.width());
  return w;
}

bool PropertyValueSet::contains(double x, double tol) const {
  return std::any_of(intervals_.begin(), intervals_.end(), [&](const Interval& iv) { return iv.contains(x, tol); });
}

double PropertyValueSet::distance(double x) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& iv : intervals_) d = std::min(d, iv.distance(x));
  return d;
}

PropertyValueSet PropertyValueSet::clipped(double lo, double hi) const {
  std::vector<Interval> out;
  for (const auto& iv : intervals_) {
    Interval c{std::max(iv.lo, lo), std::min(iv.hi, hi)};
    if (c.lo <= c.hi) out.push_back(c);
  }
  return PropertyValueSet(std::move(out));
}

double one_sided_hausdorff(const PropertyValueSet& from, const PropertyValueSet& to) {
  double worst = 0.0;
  // the distance to `to` is convex between gaps, so endpoints of each interval
  // of `from` and the midpoints of gaps of `to` inside it bound the supremum
  for (const auto& iv : from.intervals()) {
    worst = std::max({worst, to.distance(iv.lo), to.distance(iv.hi)});
    const auto& t = to.intervals();
    for (std::size_t i = 0; i + 1 < t.size(); ++i) {
      const double gap_mid = 0.5 * (t[i].hi + t[i + 1].lo);
      if (iv.contains(gap_mid)) worst = std::max(worst, to.distance(gap_mid));
    }
  }
  return worst;
}

double loss_value(const LossSpec& spec, double theta, double z) {
  switch (spec.kind()) {
    case LossKind::squared: return (theta - z) * (theta - z);
    case LossKind::absolute: return std::abs(theta - z);
    case LossKind::pinball: return ((z <= theta ? 1.0 : 0.0) - spec.tau()) * (theta - z);
    case LossKind::entropic: return theta + std::exp(spec.gamma() * (z - theta)) / spec.gamma();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

Interval loss_subgradient(const LossSpec& spec, double theta, double z) {
  switch (spec.kind()) {
    case LossKind::squared: {
      const double g = 2.0 * (theta - z);
      return {g, g};
    }
    case LossKind::absolute:
      if (theta > z) return {1.0, 1.0};
      if (theta < z) return {-1.0, -1.0};
      return {-1.0, 1.0};
    case LossKind::pinball: {
      const double t = spec.tau();
      if (theta > z) return {1.0 - t, 1.0 - t};
      if (theta < z) return {-t, -t};
      return {-t, 1.0 - t};
    }
    case LossKind::entropic: {
      const double g = 1.0 - std::exp(spec.gamma() * (z - theta));
      return {g, g};
    }
  }
  return {};
}

double log_mgf(const Distribution& p, double gamma) {
  const auto z = p.space().points();
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (p[i] > 0.0) shift = std::max(shift, gamma * z[i]);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (p[i] > 0.0) s += p[i] * std::exp(gamma * z[i] - shift);
  }
  return shift + std::log(s);
}

double entropic_risk(const Distribution& p, double gamma) { return log_mgf(p, gamma) / gamma; }

Interval quantile_set(const Distribution& p, double tau, double cdf_tol) {
  const auto z = p.space().points();
  double cdf = 0.0;
  std::size_t lower = z.size() - 1;
  bool have_lower = false;
  for (std::size_t i = 0; i < z.size(); ++i) {
    cdf += p[i];
    if (!have_lower && cdf >= tau - cdf_tol) {
      lower = i;
      have_lower = true;
    }
    if (cdf > tau + cdf_tol) return {z[lower], z[i]};
  }
  return {z[lower], z[lower]};
}

PropertyValueSet precise_property(const LossSpec& spec, const Distribution& p) {
  switch (spec.kind()) {
    case LossKind::squared: return PropertyValueSet::point(p.mean());
    case LossKind::absolute: {
      const auto q = quantile_set(p, 0.5);
      return PropertyValueSet({q});
    }
    case LossKind::pinball: return PropertyValueSet({quantile_set(p, spec.tau())});
    case LossKind::entropic: return PropertyValueSet::point(entropic_risk(p, spec.gamma()));
  }
  return {};
}

double bayes_risk(const LossSpec& spec, const Distribution& p) {
  const auto z = p.space().points();
  switch (spec.kind()) {
    case LossKind::squared: {
      const double m = p.mean();
      double v = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) v += p[i] * (z[i] - m) * (z[i] - m);
      return v;
    }
    case LossKind::absolute:
    case LossKind::pinball: {
      const double tau = spec.kind() == LossKind::absolute ? 0.5 : spec.tau();
      const double theta = quantile_set(p, tau).lo;
      double r = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) r += p[i] * loss_value(spec, theta, z[i]);
      return r;
    }
    case LossKind::entropic: return entropic_risk(p, spec.gamma()) + 1.0 / spec.gamma();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace credal
