#pragma once

// Dense two-phase revised simplex for min c.x s.t. A x = b, x >= 0.
// Built for problems with few rows and possibly very many columns (grid
// measures): the basis is refactored every iteration, pricing is a single
// dense mat-vec over all columns. Deterministic pivoting: Dantzig with
// lowest-index ties, falling back to Bland's rule when stalling.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace statearb {

enum class SimplexStatus { Optimal, Infeasible, Unbounded, IterationLimit };

template <typename Scalar>
struct SimplexResultT {
  SimplexStatus status = SimplexStatus::IterationLimit;
  Eigen::Vector<Scalar, Eigen::Dynamic> x;
  Scalar objective = std::numeric_limits<Scalar>::quiet_NaN();
  Eigen::Vector<Scalar, Eigen::Dynamic> dual;
  int iterations = 0;
};

using SimplexResult = SimplexResultT<double>;

namespace simplex_detail {

template <typename Scalar>
struct Tableau {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;

  const Matrix& columns;  // R x (N + R), artificials last
  Vector b;
  std::vector<int> basis;   // one column id per row
  Vector x_basic;
  Vector dual;
  int n_original;
  Scalar col_scale;  // magnitude of the data, for tolerances

  explicit Tableau(const Matrix& cols, Vector rhs, int n_orig)
      : columns(cols), b(std::move(rhs)), n_original(n_orig) {
    col_scale = std::max(Scalar(1), columns.template lpNorm<Eigen::Infinity>());
  }

  // One simplex phase on the given costs. allow_artificial_entering is only
  // true in phase 1.
  SimplexStatus run(const Vector& cost, bool allow_artificial_entering,
                    int max_iterations, int& iterations) {
    const int rows = static_cast<int>(columns.rows());
    const int total = static_cast<int>(columns.cols());
    const Scalar cost_tol =
        Scalar(1e-9) * std::max(Scalar(1), cost.template lpNorm<Eigen::Infinity>());
    const Scalar pivot_tol = Scalar(1e-11) * col_scale;

    int stall = 0;
    bool bland = false;
    const int stall_limit = 40 + 4 * rows;

    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> B(rows, rows);
    for (;;) {
      if (iterations++ > max_iterations) return SimplexStatus::IterationLimit;
      for (int r = 0; r < rows; ++r) B.col(r) = columns.col(basis[r]);
      Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> lu(B);
      Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> luT(
          B.transpose());
      x_basic = lu.solve(b);
      Vector cb(rows);
      for (int r = 0; r < rows; ++r) cb[r] = cost[basis[r]];
      dual = luT.solve(cb);
      if (!x_basic.allFinite() || !dual.allFinite()) {
        return SimplexStatus::IterationLimit;  // basis broke down numerically
      }

      // Pricing: reduced costs over every column; basic ones come out ~0.
      Vector reduced = cost - columns.transpose() * dual;
      const int limit = allow_artificial_entering ? total : n_original;
      int entering = -1;
      if (!bland) {
        Scalar best = -cost_tol;
        for (int j = 0; j < limit; ++j) {
          if (reduced[j] < best) {
            best = reduced[j];
            entering = j;
          }
        }
      } else {
        for (int j = 0; j < limit; ++j) {
          if (reduced[j] < -cost_tol) {
            entering = j;
            break;
          }
        }
      }
      if (entering < 0) return SimplexStatus::Optimal;

      const Vector direction = lu.solve(columns.col(entering));
      if (!direction.allFinite()) return SimplexStatus::IterationLimit;
      int leaving = -1;
      Scalar best_ratio = std::numeric_limits<Scalar>::infinity();
      for (int r = 0; r < rows; ++r) {
        if (direction[r] > pivot_tol) {
          const Scalar ratio = std::max(x_basic[r], Scalar(0)) / direction[r];
          if (ratio < best_ratio - Scalar(1e-12) ||
              (ratio < best_ratio + Scalar(1e-12) &&
               (leaving < 0 || basis[r] < basis[leaving]))) {
            best_ratio = ratio;
            leaving = r;
          }
        }
      }
      if (leaving < 0) return SimplexStatus::Unbounded;

      if (best_ratio <= Scalar(1e-12)) {
        if (++stall > stall_limit) bland = true;
      } else {
        stall = 0;
        bland = false;
      }
      basis[leaving] = entering;
    }
  }
};

}  // namespace simplex_detail

template <typename Scalar>
SimplexResultT<Scalar> solve_standard_lp(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A,
    const Eigen::Vector<Scalar, Eigen::Dynamic>& b,
    const Eigen::Vector<Scalar, Eigen::Dynamic>& c, int max_iterations = 50000) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;

  const int rows = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != rows || c.size() != n) {
    throw std::invalid_argument("simplex: dimension mismatch");
  }
  if (!A.allFinite() || !b.allFinite() || !c.allFinite()) {
    throw std::invalid_argument("simplex: data must be finite");
  }

  SimplexResultT<Scalar> result;
  result.x = Vector::Zero(n);
  if (rows == 0) {
    // Nothing binds; the optimum is 0 unless some cost is negative.
    for (int j = 0; j < n; ++j) {
      if (c[j] < 0) {
        result.status = SimplexStatus::Unbounded;
        return result;
      }
    }
    result.status = SimplexStatus::Optimal;
    result.objective = 0;
    result.dual = Vector::Zero(0);
    return result;
  }

  Matrix columns(rows, n + rows);
  columns.leftCols(n) = A;
  columns.rightCols(rows) = Matrix::Identity(rows, rows);
  Vector rhs = b;
  for (int r = 0; r < rows; ++r) {
    if (rhs[r] < 0) {
      columns.row(r) = -columns.row(r);
      rhs[r] = -rhs[r];
    }
  }

  simplex_detail::Tableau<Scalar> tab(columns, rhs, n);
  tab.basis.resize(rows);
  for (int r = 0; r < rows; ++r) tab.basis[r] = n + r;

  Vector phase1_cost = Vector::Zero(n + rows);
  phase1_cost.tail(rows).setOnes();
  SimplexStatus st =
      tab.run(phase1_cost, /*allow_artificial_entering=*/true, max_iterations,
              result.iterations);
  if (st == SimplexStatus::IterationLimit) {
    result.status = st;
    return result;
  }
  Scalar infeas = 0;
  for (int r = 0; r < rows; ++r) {
    if (tab.basis[r] >= n) infeas += std::max(tab.x_basic[r], Scalar(0));
  }
  const Scalar feas_tol =
      Scalar(1e-9) * std::max(Scalar(1), rhs.template lpNorm<Eigen::Infinity>());
  if (infeas > feas_tol) {
    result.status = SimplexStatus::Infeasible;
    result.dual = tab.dual;
    return result;
  }

  Vector phase2_cost = Vector::Zero(n + rows);
  phase2_cost.head(n) = c;
  st = tab.run(phase2_cost, /*allow_artificial_entering=*/false, max_iterations,
               result.iterations);
  if (st == SimplexStatus::IterationLimit || st == SimplexStatus::Unbounded) {
    result.status = st;
    return result;
  }

  for (int r = 0; r < rows; ++r) {
    if (tab.basis[r] < n) result.x[tab.basis[r]] = std::max(tab.x_basic[r], Scalar(0));
  }
  result.objective = c.dot(result.x);
  result.dual = tab.dual;
  result.status = SimplexStatus::Optimal;
  return result;
}

}  // namespace statearb
