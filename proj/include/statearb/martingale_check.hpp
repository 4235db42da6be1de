#pragma once

// Two-maturity marginal consistency: given state-price marginals mu and nu
// on a common finite support, decide whether a martingale transition matrix
// links them, and cross-validate through the concave-order test.

#include <Eigen/Core>

#include <vector>

#include "statearb/discrete_measure.hpp"

namespace statearb {

struct TransitionMatrix {
  std::vector<Eigen::VectorXd> support;
  Eigen::MatrixXd rows;  // row-stochastic, rows indexed like the support

  // Worst violation across stochasticity, the martingale property and
  // mu Q = nu.
  double max_violation(const DiscreteMeasure& mu, const DiscreteMeasure& nu) const;
};

struct TransitionResult {
  bool feasible = false;
  double mismatch = 0.0;  // smallest achievable sup-norm constraint violation
  TransitionMatrix transition;  // populated when feasible
};

// Feasibility of Q >= 0 with stochastic rows, martingale rows for every
// support point carrying mu-mass, and mu Q = nu. Rows with zero mu-mass are
// fixed to point masses.
TransitionResult find_transition(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                 double tol = 1e-8);

struct ConvexOrderReport {
  bool means_match = false;
  double mean_gap = 0.0;
  // (kink location K, E_mu[min(x, K)] - E_nu[min(x, K)]); nonnegative margins
  // mean mu dominates nu for concave test functions.
  std::vector<std::pair<double, double>> kink_margins;
  double min_margin = 0.0;
  bool consistent = false;  // overall verdict
};

// Concave-order test on scalar supports: kink functions min(x, K) for K in
// the support, plus mean equality. On finite supports this family is
// complete, so the verdict must agree with find_transition.
ConvexOrderReport convex_order_check(const DiscreteMeasure& mu,
                                     const DiscreteMeasure& nu, double tol = 1e-8);

}  // namespace statearb
