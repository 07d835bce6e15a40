#pragma once

// Bayes pairs, the maximum-Bayes-risk distribution of a credal set and the
// checks tying it to the elicited value.

#include <cstddef>
#include <vector>

#include "credal/core_model.hpp"
#include "credal/losses.hpp"
#include "credal/minimax.hpp"

namespace credal {

struct BayesPairResult {
  PropertyValueSet theta_set;  ///< minimizers of E_P[l(theta, Z)] within the domain
  double risk = 0.0;           ///< min over the domain of E_P[l(theta, Z)]
  bool clamped = false;        ///< the unconstrained minimizer set lies outside the domain
};

BayesPairResult bayes_pair(const LossSpec& spec, const Distribution& p, const PropertyDomain& domain);

struct WorstCaseResult {
  Distribution distribution;             ///< P*, the weighted mix of generators
  std::vector<double> weights;           ///< convex weights over generators
  double bayes_risk = 0.0;               ///< L(P*)
  double certificate_gap = 0.0;          ///< minimax value - L(P*)
  double frank_wolfe_gap = 0.0;          ///< last linearized improvement bound (LP slack for piecewise-linear losses)
  int iterations = 0;                    ///< Frank-Wolfe iterations or simplex pivots
  std::vector<std::size_t> near_max_generators;  ///< generators with Bayes risk within value_tol of L(P*)
};

/// Maximizes the (concave) Bayes risk over mixtures of the generators.
///
/// Absolute and pinball losses: the Bayes risk is a minimum of finitely many
/// linear functions of the weights (one per outcome inside the domain plus the
/// domain ends), solved exactly as a linear program.
///
/// Squared loss: the risk depends on the mixed mean and second moment only, so
/// the maximizer is found on the upper concave hull of the generator moment
/// points and then certified by the Frank-Wolfe gap below.
///
/// Entropic loss: Frank-Wolfe over the weight simplex. The supergradient at P
/// is the vector of generator risks at a Bayes act theta(P). Each iteration
/// takes the better of a pairwise step (mass moved off the worst supported
/// generator) and a plain Frank-Wolfe step, both with exact line search.
/// Stops once the Frank-Wolfe gap is <= value_tol.
///
/// Throws SolverError carrying the best weights and the remaining gap when the
/// iteration budget runs out or no step improves the objective.
WorstCaseResult worst_case_distribution(const CredalSet& set, const LossSpec& spec, const PropertyDomain& domain,
                                        const SolverParams& params = {});

/// elicit(...).value - worst_case_distribution(...).bayes_risk.
double duality_gap(const CredalSet& set, const LossSpec& spec, const PropertyDomain& domain,
                   const SolverParams& params = {});

struct InclusionReport {
  PropertyValueSet elicited;    ///< f(set)
  PropertyValueSet theta_star;  ///< Theta(P*) within the domain
  std::vector<double> p_star;
  double max_violation = 0.0;   ///< sup over f(set) of the distance to Theta(P*)
  double tolerance = 0.0;
  bool holds = false;
  bool strict = false;          ///< Theta(P*) reaches beyond f(set) by more than the tolerance
};

/// Checks f(set) is contained in Theta(P*) up to `tolerance` (defaults to
/// theta_tol when zero). Theta(P*) is evaluated with a CDF tolerance of
/// value_tol so that quantile sets at a balanced P* are not lost to rounding.
InclusionReport check_inclusion(const CredalSet& set, const LossSpec& spec, const PropertyDomain& domain,
                                const SolverParams& params = {}, double tolerance = 0.0);

}  // namespace credal
