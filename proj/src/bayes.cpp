#include "credal/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "credal/errors.hpp"
#include "credal/upper_risk.hpp"
#include "lp.hpp"

namespace credal {

namespace {

double expected_loss(const LossSpec& spec, const Distribution& p, double theta) {
  const auto z = p.space().points();
  double r = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) r += p[i] * loss_value(spec, theta, z[i]);
  return r;
}

BayesPairResult bayes_pair_from(const LossSpec& spec, const Distribution& p, const PropertyDomain& domain,
                                const PropertyValueSet& full) {
  BayesPairResult out;
  out.theta_set = full.clipped(domain.lo, domain.hi);
  if (!out.theta_set.empty()) {
    out.risk = bayes_risk(spec, p);
    return out;
  }
  // convex in theta, so the constrained minimizer is the nearer domain end
  const double theta = full.hi() < domain.lo ? domain.lo : domain.hi;
  out.theta_set = PropertyValueSet::point(theta);
  out.risk = expected_loss(spec, p, theta);
  out.clamped = true;
  return out;
}

Distribution mixture(const CredalSet& set, std::span<const double> w) {
  std::vector<double> p(set.space().size(), 0.0);
  for (std::size_t j = 0; j < set.size(); ++j) {
    if (w[j] == 0.0) continue;
    const auto g = set[j].weights();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += w[j] * g[i];
  }
  return Distribution(set.space(), std::move(p));
}

// Maximizes a concave function on [0, tmax] by golden-section search.
template <class F>
double golden_section_max(F f, double tmax) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = 0.0, b = tmax;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-15 * (1.0 + tmax); ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  // the maximizer may sit on a kink at either end of the final bracket
  double best_t = 0.5 * (a + b), best = f(best_t);
  for (double t : {a, b, tmax}) {
    const double v = f(t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  return best_t;
}

class FrankWolfe {
 public:
  FrankWolfe(const CredalSet& set, const LossSpec& spec, const PropertyDomain& domain, const SolverParams& params)
      : set_(set), spec_(spec), domain_(domain), params_(params), risk_(set, spec) {
    const auto z = set.space().points();
    squared_closed_form_ = spec.kind() == LossKind::squared && domain.lo <= z.front() && domain.hi >= z.back();
    for (const auto& g : set.generators()) {
      means_.push_back(g.mean());
      double s = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) s += g[i] * z[i] * z[i];
      second_moments_.push_back(s);
    }
  }

  double objective(std::span<const double> w) const {
    const auto p = mixture(set_, w);
    return bayes_pair_from(spec_, p, domain_, precise_property(spec_, p)).risk;
  }

  struct Oracle {
    std::vector<double> vertex;  // FW target (mix of at most two generators)
    std::vector<double> supergradient;
    double value;                // L(P)
    double gap;
  };

  Oracle linear_oracle(std::span<const double> w) const {
    const auto p = mixture(set_, w);
    const auto bp = bayes_pair_from(spec_, p, domain_, precise_property(spec_, p));
    const double a = bp.theta_set.lo(), b = bp.theta_set.hi();
    const std::size_t m = set_.size();

    double theta = a;
    if (b > a) theta = elicit(set_, spec_, PropertyDomain(a, b), params_).argmin.lo();

    Oracle o;
    o.value = bp.risk;
    o.supergradient.resize(m);
    for (std::size_t j = 0; j < m; ++j) o.supergradient[j] = risk_.generator_risk(j, theta);
    o.vertex.assign(m, 0.0);

    if (b == a) {
      const auto s = std::max_element(o.supergradient.begin(), o.supergradient.end()) - o.supergradient.begin();
      o.vertex[s] = 1.0;
      o.gap = o.supergradient[s] - o.value;
      return o;
    }

    // theta minimizes the upper risk on [a, b]; a mix of active generators with
    // 0 in its subdifferential (or the right sign at an end) attains that
    // minimum for every theta in [a, b]
    std::size_t up = 0, down = 0;
    double best_right = -std::numeric_limits<double>::infinity();
    double best_left = std::numeric_limits<double>::infinity();
    for (auto j : risk_.near_active(theta)) {
      const auto s = risk_.generator_slope(j, theta);
      if (s.hi > best_right) best_right = s.hi, up = j;
      if (s.lo < best_left) best_left = s.lo, down = j;
    }
    const auto up_slope = risk_.generator_slope(up, theta);
    const auto down_slope = risk_.generator_slope(down, theta);
    if (theta <= a || up_slope.lo <= 0.0) {
      o.vertex[up] = 1.0;
    } else if (theta >= b || down_slope.hi >= 0.0) {
      o.vertex[down] = 1.0;
    } else {
      const double lambda = -down_slope.hi / (up_slope.hi - down_slope.hi);
      o.vertex[up] += lambda;
      o.vertex[down] += 1.0 - lambda;
    }
    o.gap = risk_(theta) - o.value;
    return o;
  }

  // Exact line search along w + t d, t in [0, tmax].
  double line_search(std::span<const double> w, std::span<const double> d, double tmax) const {
    if (tmax <= 0.0) return 0.0;
    if (squared_closed_form_) {
      double m = 0.0, s = 0.0, dm = 0.0, ds = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        m += w[j] * means_[j];
        s += w[j] * second_moments_[j];
        dm += d[j] * means_[j];
        ds += d[j] * second_moments_[j];
      }
      const double slope0 = ds - 2.0 * m * dm;
      if (dm * dm <= 1e-300) return slope0 > 0.0 ? tmax : 0.0;
      return std::clamp(slope0 / (2.0 * dm * dm), 0.0, tmax);
    }
    std::vector<double> trial(w.size());
    auto phi = [&](double t) {
      for (std::size_t j = 0; j < w.size(); ++j) trial[j] = std::max(0.0, w[j] + t * d[j]);
      return objective(trial);
    };
    return golden_section_max(phi, tmax);
  }

  // Squared loss: the Bayes risk of a mixture depends only on its mean m and
  // second moment s, as s - 2 t m + t^2 with t = m clamped to the domain. For
  // a fixed mean the largest second moment lies on the upper concave hull of
  // the generator points (m_j, s_j), so the maximum sits on a hull edge. Along
  // an edge the risk is concave and quadratic between the points where the
  // mean crosses a domain end, linear outside them.
  std::optional<std::vector<double>> squared_exact() const {
    if (spec_.kind() != LossKind::squared) return std::nullopt;
    const std::size_t m = set_.size();
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return means_[a] != means_[b] ? means_[a] < means_[b] : second_moments_[a] > second_moments_[b];
    });
    std::vector<std::size_t> hull;
    for (std::size_t j : order) {
      if (!hull.empty() && means_[hull.back()] == means_[j]) continue;
      while (hull.size() >= 2) {
        const std::size_t a = hull[hull.size() - 2], b = hull.back();
        const double cross = (means_[b] - means_[a]) * (second_moments_[j] - second_moments_[a]) -
                             (second_moments_[b] - second_moments_[a]) * (means_[j] - means_[a]);
        if (cross < 0.0) break;
        hull.pop_back();
      }
      hull.push_back(j);
    }

    std::vector<double> best_w(m, 0.0);
    double best = -std::numeric_limits<double>::infinity();
    auto consider = [&](std::size_t a, std::size_t b, double lambda) {
      lambda = std::clamp(lambda, 0.0, 1.0);
      const double mu = (1.0 - lambda) * means_[a] + lambda * means_[b];
      const double t = std::clamp(mu, domain_.lo, domain_.hi);
      const double v = (1.0 - lambda) * second_moments_[a] + lambda * second_moments_[b] - 2.0 * t * mu + t * t;
      if (v > best) {
        best = v;
        std::fill(best_w.begin(), best_w.end(), 0.0);
        best_w[a] += 1.0 - lambda;
        best_w[b] += lambda;
      }
    };
    for (std::size_t k = 0; k < hull.size(); ++k) consider(hull[k], hull[k], 0.0);
    for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
      const std::size_t a = hull[k], b = hull[k + 1];
      const double dm = means_[b] - means_[a], ds = second_moments_[b] - second_moments_[a];
      auto at_mean = [&](double mu) { return (mu - means_[a]) / dm; };
      const double lo = at_mean(domain_.lo), hi = at_mean(domain_.hi);
      consider(a, b, lo);
      consider(a, b, hi);
      consider(a, b, std::clamp(at_mean(ds / (2.0 * dm)), std::min(lo, hi), std::max(lo, hi)));
    }
    return best_w;
  }

  WorstCaseResult run(double minimax_value) const {
    const std::size_t m = set_.size();
    std::vector<double> w(m, 0.0);
    if (auto exact = squared_exact()) {
      w = std::move(*exact);
    } else {
      std::size_t best = 0;
      double best_l = -std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < m; ++j) {
        const double l = bayes_pair_from(spec_, set_[j], domain_, precise_property(spec_, set_[j])).risk;
        if (l > best_l) best_l = l, best = j;
      }
      w[best] = 1.0;
    }

    int it = 0;
    Oracle o = linear_oracle(w);
    while (o.gap > params_.value_tol) {
      if (it >= params_.max_iters)
        throw SolverError("worst_case_distribution: Frank-Wolfe exceeded " + std::to_string(params_.max_iters) +
                              " iterations",
                          w, o.gap);
      ++it;

      // plain Frank-Wolfe direction
      std::vector<double> d_fw(m);
      for (std::size_t j = 0; j < m; ++j) d_fw[j] = o.vertex[j] - w[j];
      // pairwise direction: take mass from the supported generator with the
      // lowest supergradient entry
      std::size_t away = m;
      for (std::size_t j = 0; j < m; ++j) {
        if (w[j] > 0.0 && (away == m || o.supergradient[j] < o.supergradient[away])) away = j;
      }
      std::vector<double> d_pw(o.vertex);
      d_pw[away] -= 1.0;

      auto step = [&](const std::vector<double>& d, double tmax) {
        const double t = line_search(w, d, tmax);
        std::vector<double> next(m);
        for (std::size_t j = 0; j < m; ++j) next[j] = std::max(0.0, w[j] + t * d[j]);
        if (t == tmax && &d == &d_pw) next[away] = o.vertex[away] * t;  // drop step
        const double sum = std::accumulate(next.begin(), next.end(), 0.0);
        for (double& x : next) x /= sum;
        return std::pair{objective(next), next};
      };
      auto [f_fw, w_fw] = step(d_fw, 1.0);
      auto [f_pw, w_pw] = step(d_pw, w[away]);
      const double improved = std::max(f_fw, f_pw);
      if (!(improved > o.value))
        throw SolverError("worst_case_distribution: no ascent step from current iterate", w, o.gap);
      w = f_pw >= f_fw ? std::move(w_pw) : std::move(w_fw);
      o = linear_oracle(w);
    }

    WorstCaseResult out{mixture(set_, w), w, o.value, minimax_value - o.value, o.gap, it, {}};
    for (std::size_t j = 0; j < m; ++j) {
      const double l = bayes_pair_from(spec_, set_[j], domain_, precise_property(spec_, set_[j])).risk;
      if (l >= o.value - params_.value_tol) out.near_max_generators.push_back(j);
    }
    return out;
  }

 private:
  const CredalSet& set_;
  const LossSpec& spec_;
  const PropertyDomain& domain_;
  const SolverParams& params_;
  UpperRiskFunction risk_;
  bool squared_closed_form_ = false;
  std::vector<double> means_, second_moments_;
};

// Absolute and pinball losses: E_P l(theta, Z) is piecewise linear in theta
// with kinks at the outcomes, so its minimum over the domain is attained at an
// outcome inside the domain or at a domain end. The Bayes risk of a mixture is
// then a minimum of finitely many linear functions of the weights and
//   max_w min_c sum_j w_j R_j(c)
// is a linear program in (w, t).
WorstCaseResult worst_case_piecewise_linear(const CredalSet& set, const LossSpec& spec, const PropertyDomain& domain,
                                            const SolverParams& params, double minimax_value) {
  const std::size_t m = set.size();
  std::vector<double> candidates{domain.lo, domain.hi};
  for (double z : set.space().points()) {
    if (z > domain.lo && z < domain.hi) candidates.push_back(z);
  }

  // variables (w_1..w_m, t); the loss is non-negative so t >= 0 loses nothing
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (double c : candidates) {
    std::vector<double> row(m + 1, 0.0);
    for (std::size_t j = 0; j < m; ++j) row[j] = -expected_loss(spec, set[j], c);
    row[m] = 1.0;
    a.push_back(std::move(row));
    b.push_back(0.0);
  }
  std::vector<double> simplex_row(m + 1, 1.0);
  simplex_row[m] = 0.0;
  a.push_back(std::move(simplex_row));
  b.push_back(1.0);
  std::vector<double> c(m + 1, 0.0);
  c[m] = 1.0;

  const int budget = std::max(params.max_iters, 50 * static_cast<int>(a.size() + c.size()));
  const auto lp = detail::solve_lp(a, b, c, budget);
  std::vector<double> w(lp.x.begin(), lp.x.begin() + static_cast<std::ptrdiff_t>(std::min(m, lp.x.size())));
  w.resize(m, 0.0);
  if (!lp.optimal)
    throw SolverError("worst_case_distribution: simplex stopped after " + std::to_string(lp.pivots) + " pivots", w,
                      std::numeric_limits<double>::quiet_NaN());
  // every constraint row has non-positive weight coefficients, so scaling w up
  // to the simplex keeps the optimum
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  if (sum > 0.0) {
    for (double& x : w) x = std::max(0.0, x) / sum;
  } else {
    w.assign(m, 0.0);
    w[0] = 1.0;
  }

  const auto p = mixture(set, w);
  const double value = bayes_pair(spec, p, domain).risk;
  WorstCaseResult out{p, w, value, minimax_value - value, std::max(0.0, lp.objective - value), lp.pivots, {}};
  for (std::size_t j = 0; j < m; ++j) {
    if (bayes_pair(spec, set[j], domain).risk >= value - params.value_tol) out.near_max_generators.push_back(j);
  }
  return out;
}

}  // namespace

BayesPairResult bayes_pair(const LossSpec& spec, const Distribution& p, const PropertyDomain& domain) {
  return bayes_pair_from(spec, p, domain, precise_property(spec, p));
}

WorstCaseResult worst_case_distribution(const CredalSet& set, const LossSpec& spec, const PropertyDomain& domain,
                                        const SolverParams& params) {
  params.validate();
  const double minimax = elicit(set, spec, domain, params).value;
  if (!spec.strictly_convex()) return worst_case_piecewise_linear(set, spec, domain, params, minimax);
  return FrankWolfe(set, spec, domain, params).run(minimax);
}

double duality_gap(const CredalSet& set, const LossSpec& spec, const PropertyDomain& domain,
                   const SolverParams& params) {
  return worst_case_distribution(set, spec, domain, params).certificate_gap;
}

InclusionReport check_inclusion(const CredalSet& set, const LossSpec& spec, const PropertyDomain& domain,
                                const SolverParams& params, double tolerance) {
  InclusionReport r;
  r.tolerance = tolerance > 0.0 ? tolerance : params.theta_tol;
  r.elicited = elicit(set, spec, domain, params).argmin;
  const auto wc = worst_case_distribution(set, spec, domain, params);
  r.p_star.assign(wc.distribution.weights().begin(), wc.distribution.weights().end());

  PropertyValueSet full;
  switch (spec.kind()) {
    case LossKind::absolute: full = PropertyValueSet({quantile_set(wc.distribution, 0.5, params.value_tol)}); break;
    case LossKind::pinball:
      full = PropertyValueSet({quantile_set(wc.distribution, spec.tau(), params.value_tol)});
      break;
    default: full = precise_property(spec, wc.distribution);
  }
  r.theta_star = bayes_pair_from(spec, wc.distribution, domain, full).theta_set;
  r.max_violation = one_sided_hausdorff(r.elicited, r.theta_star);
  r.holds = r.max_violation <= r.tolerance;
  r.strict = one_sided_hausdorff(r.theta_star, r.elicited) > r.tolerance;
  return r;
}

}  // namespace credal
