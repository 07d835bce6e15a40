#include "credal/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "credal/errors.hpp"

namespace credal {

namespace {

void require_same_space(const OutcomeSpace& a, const OutcomeSpace& b, const char* op) {
  if (!(a == b)) throw SpaceMismatchError(std::string(op) + ": operands live on different outcome spaces");
}

std::vector<Distribution> dedupe(std::vector<Distribution> in) {
  std::vector<Distribution> out;
  out.reserve(in.size());
  for (auto& d : in) {
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

OutcomeSpace::OutcomeSpace(std::vector<double> points) {
  if (points.size() < 2) throw DomainError("outcome space needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw DomainError("outcome " + std::to_string(i) + " is not finite");
    if (i > 0 && !(points[i - 1] < points[i]))
      throw DomainError("outcomes must be strictly increasing (index " + std::to_string(i) + ")");
  }
  points_ = std::make_shared<const std::vector<double>>(std::move(points));
}

Distribution::Distribution(OutcomeSpace space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (weights_.size() != space_.size())
    throw DomainError("distribution has " + std::to_string(weights_.size()) + " weights for " +
                      std::to_string(space_.size()) + " outcomes");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    double& w = weights_[i];
    if (!std::isfinite(w)) throw DomainError("weight " + std::to_string(i) + " is not finite");
    if (w < -kProbabilityTol) throw DomainError("weight " + std::to_string(i) + " is negative");
    if (w < 0.0) w = 0.0;
    sum += w;
  }
  if (std::abs(sum - 1.0) > kRenormalizeTol) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "weights sum to " << sum << ", expected 1";
    throw DomainError(msg.str());
  }
  if (sum != 1.0) {
    for (double& w : weights_) w /= sum;
  }
  for (double& w : weights_) w = std::min(w, 1.0);
}

Distribution Distribution::point_mass(const OutcomeSpace& space, std::size_t i) {
  std::vector<double> w(space.size(), 0.0);
  w.at(i) = 1.0;
  return Distribution(space, std::move(w));
}

Distribution Distribution::uniform(const OutcomeSpace& space) {
  return Distribution(space, std::vector<double>(space.size(), 1.0 / static_cast<double>(space.size())));
}

double Distribution::mean() const { return expectation(*this, space_.points()); }

CredalSet::CredalSet(std::vector<Distribution> generators) : generators_(std::move(generators)) {
  if (generators_.empty()) throw DomainError("credal set needs at least one generator");
  for (const auto& g : generators_) require_same_space(generators_.front().space(), g.space(), "CredalSet");
}

IntervalBounds::IntervalBounds(OutcomeSpace sp, std::vector<double> lo, std::vector<double> hi)
    : space(std::move(sp)), lower(std::move(lo)), upper(std::move(hi)) {
  const std::size_t n = space.size();
  if (lower.size() != n || upper.size() != n) throw DomainError("bounds length does not match outcome count");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lower[i] >= 0.0 && upper[i] <= 1.0 && lower[i] <= upper[i]))
      throw DomainError("bounds at index " + std::to_string(i) + " must satisfy 0 <= lower <= upper <= 1");
  }
  const double lsum = std::accumulate(lower.begin(), lower.end(), 0.0);
  const double usum = std::accumulate(upper.begin(), upper.end(), 0.0);
  if (lsum > 1.0 + kProbabilityTol || usum < 1.0 - kProbabilityTol)
    throw InfeasibleError("interval bounds admit no distribution (sum lower = " + std::to_string(lsum) +
                          ", sum upper = " + std::to_string(usum) + ")");
}

Distribution mix(const Distribution& p, const Distribution& q, double alpha) {
  require_same_space(p.space(), q.space(), "mix");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("mix: alpha must lie in [0, 1]");
  std::vector<double> w(p.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = alpha * p[i] + (1.0 - alpha) * q[i];
  return Distribution(p.space(), std::move(w));
}

CredalSet convex_combine_sets(const CredalSet& a, const CredalSet& b, double alpha) {
  require_same_space(a.space(), b.space(), "convex_combine_sets");
  std::vector<Distribution> out;
  out.reserve(a.size() * b.size());
  for (const auto& p : a.generators()) {
    for (const auto& q : b.generators()) out.push_back(mix(p, q, alpha));
  }
  return CredalSet(dedupe(std::move(out)));
}

CredalSet union_sets(const CredalSet& a, const CredalSet& b) {
  require_same_space(a.space(), b.space(), "union_sets");
  std::vector<Distribution> out(a.generators().begin(), a.generators().end());
  out.insert(out.end(), b.generators().begin(), b.generators().end());
  return CredalSet(dedupe(std::move(out)));
}

namespace {

// Depth-first enumeration of vertices. Every coordinate except `free_index`
// sits at one of its bounds; the free coordinate absorbs the remainder and must
// land inside its own bounds. Partial sums prune branches that cannot reach 1.
class VertexEnumerator {
 public:
  explicit VertexEnumerator(const IntervalBounds& b) : b_(b), n_(b.space.size()), point_(n_) {
    // suffix sums over the non-free coordinates are recomputed per free index
    min_rest_.resize(n_ + 1);
    max_rest_.resize(n_ + 1);
  }

  std::vector<std::vector<double>> run() {
    for (std::size_t k = 0; k < n_; ++k) {
      free_ = k;
      min_rest_[n_] = max_rest_[n_] = 0.0;
      for (std::size_t i = n_; i-- > 0;) {
        min_rest_[i] = min_rest_[i + 1] + (i == k ? 0.0 : b_.lower[i]);
        max_rest_[i] = max_rest_[i + 1] + (i == k ? 0.0 : b_.upper[i]);
      }
      descend(0, 0.0);
    }
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

 private:
  static constexpr double kSnap = 1e-12;

  void descend(std::size_t i, double partial) {
    // the free coordinate must be able to absorb 1 - (sum of the others)
    const double lo = b_.lower[free_], hi = b_.upper[free_];
    if (partial + min_rest_[i] > 1.0 - lo + kSnap || partial + max_rest_[i] < 1.0 - hi - kSnap) return;
    if (i == n_) {
      emit();
      return;
    }
    if (i == free_) {
      descend(i + 1, partial);
      return;
    }
    point_[i] = b_.lower[i];
    descend(i + 1, partial + b_.lower[i]);
    if (b_.upper[i] != b_.lower[i]) {
      point_[i] = b_.upper[i];
      descend(i + 1, partial + b_.upper[i]);
    }
  }

  void emit() {
    // summed in index order so the same vertex reached through different free
    // coordinates yields identical bits
    double rest = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i != free_) rest += point_[i];
    }
    double v = 1.0 - rest;
    const double lo = b_.lower[free_], hi = b_.upper[free_];
    if (v < lo - kSnap || v > hi + kSnap) return;
    if (std::abs(v - lo) <= kSnap) v = lo;
    if (std::abs(v - hi) <= kSnap) v = hi;
    point_[free_] = v;
    out_.push_back(point_);
  }

  const IntervalBounds& b_;
  std::size_t n_;
  std::size_t free_ = 0;
  std::vector<double> point_;
  std::vector<double> min_rest_, max_rest_;
  std::vector<std::vector<double>> out_;
};

}  // namespace

CredalSet bounds_to_generators(const IntervalBounds& bounds) {
  auto vertices = VertexEnumerator(bounds).run();
  if (vertices.empty()) throw InfeasibleError("interval bounds admit no distribution");
  std::vector<Distribution> gens;
  gens.reserve(vertices.size());
  for (auto& v : vertices) gens.emplace_back(bounds.space, std::move(v));
  return CredalSet(dedupe(std::move(gens)));
}

double expectation(const Distribution& p, std::span<const double> values) {
  if (values.size() != p.size())
    throw DomainError("expectation: " + std::to_string(values.size()) + " values for " +
                      std::to_string(p.size()) + " outcomes");
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += p[i] * values[i];
  return s;
}

}  // namespace credal
