#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace credal {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition or type invariant.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share an outcome space do not.
class SpaceMismatchError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Interval bounds describe an empty set of distributions.
class InfeasibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A scenario or configuration document could not be turned into valid inputs.
class ScenarioError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver stopped without meeting its tolerance.
///
/// `best_iterate` holds whatever the solver considered its best point when it
/// gave up: a one-element vector for the scalar minimax search, generator
/// weights for the worst-case search. `remaining_gap` is the last certified
/// distance to optimality (NaN when the solver has no certificate).
class SolverError : public Error {
 public:
  SolverError(const std::string& what, std::vector<double> best_iterate, double remaining_gap)
      : Error(what), best_iterate_(std::move(best_iterate)), remaining_gap_(remaining_gap) {}

  const std::vector<double>& best_iterate() const noexcept { return best_iterate_; }
  double remaining_gap() const noexcept { return remaining_gap_; }

 private:
  std::vector<double> best_iterate_;
  double remaining_gap_;
};

/// The upper risk evaluated to a non-finite number at the reported minimizer.
class OverflowError : public SolverError {
 public:
  using SolverError::SolverError;
};

}  // namespace credal
