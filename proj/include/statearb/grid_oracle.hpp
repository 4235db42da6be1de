#pragma once

// Brute-force ground truth: discretize the support box on a grid and solve
// the price-matching linear program over measures supported on it. Feasible
// instances produce a witness measure; bound queries optimize a target
// payoff over the same feasible set.

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

#include "statearb/discrete_measure.hpp"
#include "statearb/market.hpp"
#include "statearb/payoff_algebra.hpp"

namespace statearb {

// Product grid with sorted per-axis points covering [0, B_i], endpoints
// included exactly. Axes may carry extra (off-uniform) points so that kinks
// of quoted payoffs are representable.
class Grid {
 public:
  static Grid uniform(const Eigen::VectorXd& support_max, int points_per_axis);

  void insert(int axis, double value);  // no-op when out of range or present

  int dim() const { return static_cast<int>(axes_.size()); }
  const std::vector<double>& axis(int i) const { return axes_[i]; }
  std::uint64_t total_points() const;
  Eigen::VectorXd point(std::uint64_t flat_index) const;

 private:
  std::vector<std::vector<double>> axes_;
};

struct OracleOptions {
  std::uint64_t max_grid_points = 1'000'000;
  double feasibility_tol = 1e-8;
  int lp_max_iterations = 200000;
};

struct OracleResult {
  bool feasible = false;
  double max_violation = 0.0;  // smallest achievable sup-norm price mismatch
  DiscreteMeasure witness;     // populated when feasible
  Grid grid;
};

class GridCapExceeded : public std::runtime_error {
 public:
  GridCapExceeded(std::uint64_t requested, std::uint64_t cap);
  std::uint64_t requested() const { return requested_; }

 private:
  std::uint64_t requested_;
};

// Feasibility of the grid-restricted moment-matching LP.
OracleResult oracle_feasible(const MarketInstance& market, int points_per_axis,
                             const OracleOptions& options = {});

// Extremum of E[target] over grid measures matching the quoted prices.
// Throws when the market is infeasible on this grid.
double oracle_bound(const MarketInstance& market, const PayoffGenerator& target,
                    BoundDirection direction, int points_per_axis,
                    const OracleOptions& options = {});

// f(s) = E_mu[s(x)] for each element, in order.
Eigen::VectorXd moments_from_measure(const DiscreteMeasure& measure,
                                     const GeneratorSet& generators,
                                     const std::vector<SemigroupElement>& elements);

}  // namespace statearb
