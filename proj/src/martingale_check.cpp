#include "statearb/martingale_check.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "statearb/simplex.hpp"

namespace statearb {

namespace {

void require_common_support(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  mu.validate();
  nu.validate();
  if (mu.points.size() != nu.points.size()) {
    throw std::invalid_argument("martingale check: supports differ in size");
  }
  for (std::size_t i = 0; i < mu.points.size(); ++i) {
    if (mu.points[i].size() != nu.points[i].size() ||
        (mu.points[i] - nu.points[i]).cwiseAbs().maxCoeff() > 1e-12) {
      throw std::invalid_argument("martingale check: supports must coincide pointwise");
    }
  }
}

}  // namespace

double TransitionMatrix::max_violation(const DiscreteMeasure& mu,
                                       const DiscreteMeasure& nu) const {
  const int N = static_cast<int>(support.size());
  double worst = rows.minCoeff() < 0 ? -rows.minCoeff() : 0.0;
  for (int i = 0; i < N; ++i) {
    worst = std::max(worst, std::abs(rows.row(i).sum() - 1.0));
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(support[i].size());
    for (int j = 0; j < N; ++j) mean += rows(i, j) * support[j];
    worst = std::max(worst, (mean - support[i]).cwiseAbs().maxCoeff());
  }
  for (int j = 0; j < N; ++j) {
    double mass = 0.0;
    for (int i = 0; i < N; ++i) mass += mu.weights[i] * rows(i, j);
    worst = std::max(worst, std::abs(mass - nu.weights[j]));
  }
  return worst;
}

TransitionResult find_transition(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                 double tol) {
  require_common_support(mu, nu);

  const int N = static_cast<int>(mu.points.size());
  const int dim = static_cast<int>(mu.points.front().size());
  std::vector<int> live;  // rows constrained by mu Q = nu
  for (int i = 0; i < N; ++i) {
    if (mu.weights[i] > 0.0) live.push_back(i);
  }
  const int L = static_cast<int>(live.size());

  // Variables Q_ij for live rows i, all columns j, plus the sup-norm slack t:
  // rows stochastic and martingale exactly, mu Q = nu within t, minimize t.
  const int nq = L * N;
  const int rows_exact = L * (1 + dim);
  const int rows_soft = 2 * N;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows_exact + rows_soft, nq + 1 + rows_soft);
  Eigen::VectorXd b(rows_exact + rows_soft);

  int r = 0;
  for (int li = 0; li < L; ++li) {
    for (int j = 0; j < N; ++j) A(r, li * N + j) = 1.0;
    b[r++] = 1.0;
  }
  for (int li = 0; li < L; ++li) {
    const int i = live[li];
    for (int k = 0; k < dim; ++k) {
      for (int j = 0; j < N; ++j) A(r, li * N + j) = mu.points[j][k];
      b[r++] = mu.points[i][k];
    }
  }
  // mu Q - nu <= t and >= -t, with slack columns.
  for (int j = 0; j < N; ++j) {
    for (int li = 0; li < L; ++li) A(r, li * N + j) = mu.weights[live[li]];
    A(r, nq) = -1.0;
    A(r, nq + 1 + j) = 1.0;
    b[r++] = nu.weights[j];
  }
  for (int j = 0; j < N; ++j) {
    for (int li = 0; li < L; ++li) A(r, li * N + j) = mu.weights[live[li]];
    A(r, nq) = 1.0;
    A(r, nq + 1 + N + j) = -1.0;
    b[r++] = nu.weights[j];
  }

  Eigen::VectorXd cost = Eigen::VectorXd::Zero(A.cols());
  cost[nq] = 1.0;
  const SimplexResult lp = solve_standard_lp<double>(A, b, cost);

  TransitionResult result;
  if (lp.status != SimplexStatus::Optimal) {
    // Exact rows unsatisfiable (they never are for a proper mu) or stalls.
    result.feasible = false;
    result.mismatch = std::numeric_limits<double>::infinity();
    return result;
  }
  result.mismatch = lp.objective;
  result.feasible = lp.objective <= tol;
  if (result.feasible) {
    result.transition.support = mu.points;
    result.transition.rows = Eigen::MatrixXd::Zero(N, N);
    for (int li = 0; li < L; ++li) {
      for (int j = 0; j < N; ++j) {
        result.transition.rows(live[li], j) = std::max(lp.x[li * N + j], 0.0);
      }
    }
    for (int i = 0; i < N; ++i) {
      if (mu.weights[i] <= 0.0) result.transition.rows(i, i) = 1.0;
    }
  }
  return result;
}

ConvexOrderReport convex_order_check(const DiscreteMeasure& mu,
                                     const DiscreteMeasure& nu, double tol) {
  require_common_support(mu, nu);
  if (mu.points.front().size() != 1) {
    throw std::invalid_argument(
        "convex order check: kink test functions need scalar supports");
  }

  ConvexOrderReport report;
  report.mean_gap = std::abs(mu.mean()[0] - nu.mean()[0]);
  report.means_match = report.mean_gap <= tol;

  std::set<double> kinks;
  for (const auto& p : mu.points) kinks.insert(p[0]);

  report.min_margin = std::numeric_limits<double>::infinity();
  for (double k : kinks) {
    const auto clipped = [k](const Eigen::VectorXd& x) { return std::min(x[0], k); };
    const double margin = mu.expectation(clipped) - nu.expectation(clipped);
    report.kink_margins.emplace_back(k, margin);
    report.min_margin = std::min(report.min_margin, margin);
  }
  report.consistent = report.means_match && report.min_margin >= -tol;
  return report;
}

}  // namespace statearb
