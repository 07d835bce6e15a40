#pragma once

// Finite outcome spaces, probability vectors and finitely generated credal sets.
//
// A CredalSet stands for the closed convex hull of its generators. The hull is
// never built: every functional the library evaluates on a credal set is either
// linear in the distribution (so its supremum is attained at a generator) or is
// optimized over mixture weights of the generators directly.

#include <memory>
#include <span>
#include <vector>

namespace credal {

/// Sum-to-one tolerance enforced on every stored distribution.
inline constexpr double kProbabilityTol = 1e-12;
/// Inputs whose weights sum within this distance of one are renormalized.
inline constexpr double kRenormalizeTol = 1e-9;

/// Ordered finite set of real outcomes z_1 < ... < z_n, n >= 2.
///
/// Cheap to copy; copies share storage. Two spaces compare equal when their
/// points are identical.
class OutcomeSpace {
 public:
  explicit OutcomeSpace(std::vector<double> points);

  std::size_t size() const noexcept { return points_->size(); }
  std::span<const double> points() const noexcept { return *points_; }
  double operator[](std::size_t i) const { return (*points_)[i]; }
  double min() const { return points_->front(); }
  double max() const { return points_->back(); }

  friend bool operator==(const OutcomeSpace& a, const OutcomeSpace& b) {
    return a.points_ == b.points_ || *a.points_ == *b.points_;
  }

 private:
  std::shared_ptr<const std::vector<double>> points_;
};

/// Probability vector on an OutcomeSpace.
class Distribution {
 public:
  /// Validates and, when the weights sum to within kRenormalizeTol of one,
  /// renormalizes. Throws DomainError otherwise.
  Distribution(OutcomeSpace space, std::vector<double> weights);

  /// Point mass on outcome index `i`.
  static Distribution point_mass(const OutcomeSpace& space, std::size_t i);
  static Distribution uniform(const OutcomeSpace& space);

  const OutcomeSpace& space() const noexcept { return space_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::size_t size() const noexcept { return weights_.size(); }

  double mean() const;

  /// Exact equality of spaces and weight vectors.
  friend bool operator==(const Distribution& a, const Distribution& b) {
    return a.weights_ == b.weights_ && a.space_ == b.space_;
  }

 private:
  OutcomeSpace space_;
  std::vector<double> weights_;
};

/// Imprecise probability represented by a non-empty list of generators that
/// share one outcome space.
class CredalSet {
 public:
  explicit CredalSet(std::vector<Distribution> generators);
  CredalSet(std::initializer_list<Distribution> generators)
      : CredalSet(std::vector<Distribution>(generators)) {}

  const OutcomeSpace& space() const noexcept { return generators_.front().space(); }
  std::span<const Distribution> generators() const noexcept { return generators_; }
  const Distribution& operator[](std::size_t i) const { return generators_[i]; }
  std::size_t size() const noexcept { return generators_.size(); }

 private:
  std::vector<Distribution> generators_;
};

/// Lower/upper probability bounds per outcome.
///
/// Construction checks 0 <= lower_i <= upper_i <= 1 (DomainError) and
/// sum(lower) <= 1 <= sum(upper) (InfeasibleError).
struct IntervalBounds {
  IntervalBounds(OutcomeSpace space, std::vector<double> lower, std::vector<double> upper);

  OutcomeSpace space;
  std::vector<double> lower;
  std::vector<double> upper;
};

/// alpha * p + (1 - alpha) * q.
Distribution mix(const Distribution& p, const Distribution& q, double alpha);

/// Generators {mix(P, Q, alpha)} over all pairs, exact duplicates removed.
CredalSet convex_combine_sets(const CredalSet& a, const CredalSet& b, double alpha);

/// Concatenation of generator lists with exact duplicates removed (first
/// occurrence kept).
CredalSet union_sets(const CredalSet& a, const CredalSet& b);

/// Vertices of {p : lower <= p <= upper, sum p = 1}, sorted lexicographically.
CredalSet bounds_to_generators(const IntervalBounds& bounds);

/// sum_i p_i * values_i.
double expectation(const Distribution& p, std::span<const double> values);

}  // namespace credal
