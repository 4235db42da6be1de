#include "statearb/grid_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "statearb/conic_solver.hpp"

namespace statearb {

Grid Grid::uniform(const Eigen::VectorXd& support_max, int points_per_axis) {
  if (points_per_axis < 2) {
    throw std::invalid_argument("grid: need at least two points per axis");
  }
  Grid g;
  g.axes_.resize(support_max.size());
  for (int i = 0; i < support_max.size(); ++i) {
    if (!(support_max[i] > 0.0)) {
      throw std::invalid_argument("grid: support bound must be positive");
    }
    auto& axis = g.axes_[i];
    axis.resize(points_per_axis);
    for (int j = 0; j < points_per_axis; ++j) {
      axis[j] = support_max[i] * static_cast<double>(j) / (points_per_axis - 1);
    }
    axis.front() = 0.0;
    axis.back() = support_max[i];
  }
  return g;
}

void Grid::insert(int axis, double value) {
  auto& pts = axes_.at(axis);
  if (value < pts.front() || value > pts.back()) return;
  auto it = std::lower_bound(pts.begin(), pts.end(), value);
  if (it != pts.end() && std::abs(*it - value) < 1e-12) return;
  if (it != pts.begin() && std::abs(*(it - 1) - value) < 1e-12) return;
  pts.insert(it, value);
}

std::uint64_t Grid::total_points() const {
  std::uint64_t total = 1;
  for (const auto& axis : axes_) total *= axis.size();
  return total;
}

Eigen::VectorXd Grid::point(std::uint64_t flat_index) const {
  Eigen::VectorXd x(dim());
  for (int i = dim() - 1; i >= 0; --i) {
    const std::uint64_t len = axes_[i].size();
    x[i] = axes_[i][flat_index % len];
    flat_index /= len;
  }
  return x;
}

GridCapExceeded::GridCapExceeded(std::uint64_t requested, std::uint64_t cap)
    : std::runtime_error("grid oracle: " + std::to_string(requested) +
                         " grid points exceed the cap of " + std::to_string(cap)),
      requested_(requested) {}

namespace {

// Grid for the market, with single-asset kink abscissas inserted (strike / a_i
// when the payoff depends on one asset only).
Grid market_grid(const MarketInstance& market, int points_per_axis,
                 const std::vector<const PayoffGenerator*>& extra_payoffs) {
  Grid grid = Grid::uniform(market.support_max, points_per_axis);
  const auto add_kink = [&grid](const PayoffGenerator& payoff) {
    if (payoff.kind() != PayoffGenerator::Kind::AbsLinear) return;
    int nonzero = -1;
    for (int i = 0; i < payoff.coefficients().size(); ++i) {
      if (payoff.coefficients()[i] != 0.0) {
        if (nonzero >= 0) return;  // kink is a hyperplane, not an axis point
        nonzero = i;
      }
    }
    if (nonzero >= 0) grid.insert(nonzero, payoff.offset() / payoff.coefficients()[nonzero]);
  };
  for (const DerivativeQuote& d : market.derivatives) add_kink(d.payoff);
  for (const PayoffGenerator* p : extra_payoffs) add_kink(*p);
  return grid;
}

struct PriceRows {
  Eigen::MatrixXd values;  // (1 + n + m) x N payoff values on the grid
  Eigen::VectorXd rhs;     // [1; p; q]
};

PriceRows price_rows(const MarketInstance& market, const Grid& grid) {
  const GeneratorSet gens = market.generators();
  const std::uint64_t npts = grid.total_points();
  const int rows = 1 + gens.size();

  PriceRows out;
  out.values.resize(rows, static_cast<Eigen::Index>(npts));
  out.rhs.resize(rows);
  out.rhs[0] = 1.0;
  for (int g = 0; g < gens.size(); ++g) {
    const auto prices = market.generator_prices();
    out.rhs[g + 1] = *prices[g];
  }
  for (std::uint64_t j = 0; j < npts; ++j) {
    const Eigen::VectorXd x = grid.point(j);
    out.values(0, j) = 1.0;
    for (int g = 0; g < gens.size(); ++g) out.values(g + 1, j) = gens[g].value_at(x);
  }
  return out;
}

// min t  s.t.  |A w - b|_inf <= t, w >= 0. Standard form with columns
// (w, t, upper slacks, lower slacks).
SimplexResult min_linf_mismatch(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                int max_iterations) {
  const int rows = static_cast<int>(A.rows());
  const Eigen::Index n = A.cols();
  Eigen::MatrixXd S(2 * rows, n + 1 + 2 * rows);
  S.setZero();
  S.topLeftCorner(rows, n) = A;
  S.bottomLeftCorner(rows, n) = A;
  S.block(0, n, rows, 1).setConstant(-1.0);
  S.block(rows, n, rows, 1).setConstant(1.0);
  S.block(0, n + 1, rows, rows) = Eigen::MatrixXd::Identity(rows, rows);
  S.block(rows, n + 1 + rows, rows, rows) = -Eigen::MatrixXd::Identity(rows, rows);
  Eigen::VectorXd rhs(2 * rows);
  rhs << b, b;
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(S.cols());
  cost[n] = 1.0;
  return solve_standard_lp<double>(S, rhs, cost, max_iterations);
}

// Optimize target . w over w >= 0 with |A w - b|_inf <= band.
SimplexResult band_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                      const Eigen::VectorXd& target, bool maximize, double band,
                      int max_iterations) {
  const int rows = static_cast<int>(A.rows());
  const Eigen::Index n = A.cols();
  Eigen::MatrixXd S(2 * rows, n + 2 * rows);
  S.setZero();
  S.topLeftCorner(rows, n) = A;
  S.bottomLeftCorner(rows, n) = A;
  S.block(0, n, rows, rows) = Eigen::MatrixXd::Identity(rows, rows);
  S.block(rows, n + rows, rows, rows) = -Eigen::MatrixXd::Identity(rows, rows);
  Eigen::VectorXd rhs(2 * rows);
  rhs.head(rows) = b.array() + band;
  rhs.tail(rows) = b.array() - band;
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(S.cols());
  cost.head(n) = maximize ? (-target).eval() : target;
  SimplexResult r = solve_standard_lp<double>(S, rhs, cost, max_iterations);
  if (r.status == SimplexStatus::Optimal && maximize) r.objective = -r.objective;
  return r;
}

}  // namespace

OracleResult oracle_feasible(const MarketInstance& market, int points_per_axis,
                             const OracleOptions& options) {
  market.validate();
  Grid grid = market_grid(market, points_per_axis, {});
  if (grid.total_points() > options.max_grid_points) {
    throw GridCapExceeded(grid.total_points(), options.max_grid_points);
  }

  const PriceRows rows = price_rows(market, grid);
  const SimplexResult lp =
      min_linf_mismatch(rows.values, rows.rhs, options.lp_max_iterations);
  if (lp.status != SimplexStatus::Optimal) {
    throw std::runtime_error("grid oracle: slack LP did not solve");
  }

  OracleResult result;
  result.grid = grid;
  result.max_violation = lp.objective;
  result.feasible = lp.objective <= options.feasibility_tol;
  if (result.feasible) {
    const std::uint64_t npts = grid.total_points();
    std::vector<Eigen::VectorXd> points;
    std::vector<double> weights;
    for (std::uint64_t j = 0; j < npts; ++j) {
      const double w = lp.x[static_cast<Eigen::Index>(j)];
      if (w > 1e-14) {
        points.push_back(grid.point(j));
        weights.push_back(w);
      }
    }
    result.witness.points = std::move(points);
    result.witness.weights =
        Eigen::Map<Eigen::VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size()));
    result.witness.weights /= result.witness.weights.sum();
    result.witness.validate();
  }
  return result;
}

double oracle_bound(const MarketInstance& market, const PayoffGenerator& target,
                    BoundDirection direction, int points_per_axis,
                    const OracleOptions& options) {
  market.validate();
  Grid grid = market_grid(market, points_per_axis, {&target});
  if (grid.total_points() > options.max_grid_points) {
    throw GridCapExceeded(grid.total_points(), options.max_grid_points);
  }

  const PriceRows rows = price_rows(market, grid);
  const SimplexResult feas =
      min_linf_mismatch(rows.values, rows.rhs, options.lp_max_iterations);
  if (feas.status != SimplexStatus::Optimal ||
      feas.objective > options.feasibility_tol) {
    throw std::runtime_error(
        "grid oracle: market prices are not attainable on this grid "
        "(mismatch " + std::to_string(feas.objective) + ")");
  }

  const std::uint64_t npts = grid.total_points();
  Eigen::VectorXd target_values(static_cast<Eigen::Index>(npts));
  for (std::uint64_t j = 0; j < npts; ++j) {
    target_values[static_cast<Eigen::Index>(j)] = target.value_at(grid.point(j));
  }
  // Band just wide enough for the achieved mismatch, so on-grid strikes give
  // near-exact equality constraints and off-grid ones stay solvable.
  double band = std::max(1.5 * std::max(feas.objective, 0.0), 1e-12);
  SimplexResult lp =
      band_lp(rows.values, rows.rhs, target_values,
              direction == BoundDirection::Upper, band, options.lp_max_iterations);
  if (lp.status == SimplexStatus::Infeasible) {
    band = options.feasibility_tol + std::max(feas.objective, 0.0);
    lp = band_lp(rows.values, rows.rhs, target_values,
                 direction == BoundDirection::Upper, band, options.lp_max_iterations);
  }
  if (lp.status != SimplexStatus::Optimal) {
    throw std::runtime_error("grid oracle: bound LP did not solve");
  }
  return lp.objective;
}

Eigen::VectorXd moments_from_measure(const DiscreteMeasure& measure,
                                     const GeneratorSet& generators,
                                     const std::vector<SemigroupElement>& elements) {
  measure.validate();
  Eigen::VectorXd f(static_cast<Eigen::Index>(elements.size()));
  for (std::size_t i = 0; i < elements.size(); ++i) {
    f[static_cast<Eigen::Index>(i)] = measure.expectation(
        [&](const Eigen::VectorXd& x) { return evaluate(elements[i], generators, x); });
  }
  return f;
}

}  // namespace statearb
