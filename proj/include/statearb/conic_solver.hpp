#pragma once

// Dense block-diagonal semidefinite programming: feasibility through a
// phase-I slack formulation and linear-objective optimization with an
// infeasible-start primal-dual predictor-corrector method. Problems carry
// constraints of the form F0 + sum_k y_k F_k >= 0 per block.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "statearb/simplex.hpp"

namespace statearb {

enum class SolveStatus { Optimal, Feasible, Infeasible, Unbounded, NumericalTrouble };

std::string to_string(SolveStatus status);

struct SolverOptions {
  double tolerance = 1e-7;
  int max_iterations = 200;
  int lp_max_iterations = 200000;
};

template <typename Scalar>
struct ConicBlockT {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix constant;             // F0
  std::vector<Matrix> coeff;   // F_k, one per variable

  Matrix value_at(const Eigen::Vector<Scalar, Eigen::Dynamic>& y) const {
    Matrix v = constant;
    for (std::size_t k = 0; k < coeff.size(); ++k) v += y[k] * coeff[k];
    return v;
  }
};

template <typename Scalar>
struct ConicProblemT {
  using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;

  Vector objective;  // maximize objective . y; zero for pure feasibility
  std::vector<ConicBlockT<Scalar>> blocks;

  int num_vars() const { return static_cast<int>(objective.size()); }

  void validate() const {
    if (blocks.empty()) throw std::invalid_argument("conic problem: no blocks");
    if (!objective.allFinite()) {
      throw std::invalid_argument("conic problem: objective must be finite");
    }
    for (const auto& block : blocks) {
      const auto dim = block.constant.rows();
      if (block.constant.cols() != dim || !block.constant.allFinite()) {
        throw std::invalid_argument("conic problem: bad constant matrix");
      }
      if (static_cast<int>(block.coeff.size()) != num_vars()) {
        throw std::invalid_argument(
            "conic problem: coefficient count must equal the variable count");
      }
      for (const auto& f : block.coeff) {
        if (f.rows() != dim || f.cols() != dim || !f.allFinite()) {
          throw std::invalid_argument("conic problem: coefficient dimension mismatch");
        }
      }
    }
  }
};

template <typename Scalar>
struct ConicSolutionT {
  SolveStatus status = SolveStatus::NumericalTrouble;
  Eigen::Vector<Scalar, Eigen::Dynamic> y;
  Scalar objective = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar phase1_margin = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar primal_residual = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar dual_residual = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar duality_gap = std::numeric_limits<Scalar>::quiet_NaN();
  int iterations = 0;
  std::string message;
};

using ConicBlock = ConicBlockT<double>;
using ConicProblem = ConicProblemT<double>;
using ConicSolution = ConicSolutionT<double>;

// Smallest eigenvalue of a symmetric matrix; the certificate primitive.
template <typename Derived>
typename Derived::Scalar min_eigenvalue(const Eigen::MatrixBase<Derived>& matrix) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix m = matrix;
  if (!m.allFinite()) {
    throw std::invalid_argument("min_eigenvalue: entries must be finite");
  }
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("min_eigenvalue: matrix must be square");
  }
  if (m.rows() == 0) return Scalar(0);
  if (m.rows() == 1) return m(0, 0);
  m = ((m + m.transpose()) / Scalar(2)).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

namespace conic_detail {

enum class IpmOutcome { Converged, IterationLimit, Diverged, Stalled, Failed };

template <typename Scalar>
struct IpmResult {
  using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;

  IpmOutcome outcome = IpmOutcome::Failed;
  Vector y;
  Scalar dual_objective = 0;    // c . y, the minimized value
  Scalar primal_objective = 0;  // -<F0, X>
  Scalar rel_gap = std::numeric_limits<Scalar>::infinity();
  Scalar primal_res = std::numeric_limits<Scalar>::infinity();
  Scalar dual_res = std::numeric_limits<Scalar>::infinity();
  int iterations = 0;
};

// Largest step alpha keeping P + alpha * D positive semidefinite, for P > 0.
// Near-singular iterates get a relative jitter so the factorization survives
// the endgame; the jitter only makes the step estimate more conservative
// together with the fraction-to-boundary scaling applied by the caller.
template <typename Scalar>
Scalar max_step(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& P,
                const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& D) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::LLT<Matrix> llt(P);
  if (llt.info() != Eigen::Success) {
    const Scalar jitter =
        std::numeric_limits<Scalar>::epsilon() * std::max(P.diagonal().maxCoeff(), Scalar(1));
    Matrix shifted = P;
    for (int tries = 0; tries < 3; ++tries) {
      shifted += jitter * std::pow(Scalar(100), tries) * Matrix::Identity(P.rows(), P.cols());
      llt.compute(shifted);
      if (llt.info() == Eigen::Success) break;
    }
    if (llt.info() != Eigen::Success) return Scalar(0);
  }
  Matrix y = llt.matrixL().solve(D);
  Matrix w = llt.matrixL().solve(y.transpose());
  w = ((w + w.transpose()) / Scalar(2)).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(w, Eigen::EigenvaluesOnly);
  const Scalar lambda = es.eigenvalues().minCoeff();
  if (lambda >= -std::numeric_limits<Scalar>::epsilon()) {
    return std::numeric_limits<Scalar>::infinity();
  }
  return Scalar(-1) / lambda;
}

// Minimize c . y subject to F0 + sum y_k F_k >= 0 per block, Mehrotra
// predictor-corrector with the dual (HKM) direction.
template <typename Scalar>
IpmResult<Scalar> ipm_minimize(const std::vector<ConicBlockT<Scalar>>& blocks,
                               const Eigen::Vector<Scalar, Eigen::Dynamic>& c,
                               const SolverOptions& options) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;

  const int m = static_cast<int>(c.size());
  const int nb = static_cast<int>(blocks.size());
  int total_dim = 0;
  Scalar data_norm = c.template lpNorm<Eigen::Infinity>();
  for (const auto& block : blocks) {
    total_dim += static_cast<int>(block.constant.rows());
    data_norm = std::max(data_norm, block.constant.template lpNorm<Eigen::Infinity>());
    for (const auto& f : block.coeff) {
      data_norm = std::max(data_norm, f.template lpNorm<Eigen::Infinity>());
    }
  }
  const Scalar xi = std::max(Scalar(10), Scalar(2) * data_norm);

  IpmResult<Scalar> result;
  result.y = Vector::Zero(m);
  std::vector<Matrix> X(nb), Z(nb);
  for (int b = 0; b < nb; ++b) {
    const auto dim = blocks[b].constant.rows();
    X[b] = Matrix::Identity(dim, dim) * xi;
    Z[b] = Matrix::Identity(dim, dim) * xi;
  }

  std::vector<Matrix> Rd(nb), H(nb), dXa(nb), dZa(nb), dX(nb), dZ(nb), corr(nb);
  std::vector<std::vector<Matrix>> W(nb);
  for (int b = 0; b < nb; ++b) W[b].resize(m);
  std::vector<Eigen::LLT<Matrix>> zllt(nb);

  const Scalar c_scale = Scalar(1) + c.template lpNorm<Eigen::Infinity>();
  Scalar f0_scale = Scalar(1);
  for (const auto& block : blocks) {
    f0_scale = std::max(f0_scale, block.constant.template lpNorm<Eigen::Infinity>());
  }

  Scalar best_mu = std::numeric_limits<Scalar>::infinity();
  int stall_count = 0;

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    result.iterations = iter;

    Vector rp = c;
    Scalar xz = 0;
    Scalar pobj = 0;
    Scalar rd_norm = 0;
    Scalar x_norm = 0;
    for (int b = 0; b < nb; ++b) {
      Rd[b] = blocks[b].constant - Z[b];
      for (int k = 0; k < m; ++k) {
        Rd[b] += result.y[k] * blocks[b].coeff[k];
        rp[k] -= blocks[b].coeff[k].cwiseProduct(X[b]).sum();
      }
      xz += X[b].cwiseProduct(Z[b]).sum();
      pobj -= blocks[b].constant.cwiseProduct(X[b]).sum();
      rd_norm = std::max(rd_norm, Rd[b].template lpNorm<Eigen::Infinity>());
      x_norm = std::max(x_norm, X[b].template lpNorm<Eigen::Infinity>());
    }
    const Scalar mu = xz / Scalar(total_dim);
    const Scalar dobj = c.dot(result.y);

    result.dual_objective = dobj;
    result.primal_objective = pobj;
    result.rel_gap = std::abs(dobj - pobj) / (Scalar(1) + std::abs(dobj) + std::abs(pobj));
    result.primal_res = rp.template lpNorm<Eigen::Infinity>() / c_scale;
    result.dual_res = rd_norm / f0_scale;

    if (result.rel_gap <= options.tolerance && result.primal_res <= options.tolerance &&
        result.dual_res <= options.tolerance) {
      result.outcome = IpmOutcome::Converged;
      return result;
    }
    if (x_norm > Scalar(1e14) * xi ||
        result.y.template lpNorm<Eigen::Infinity>() > Scalar(1e12) * std::max(Scalar(1), xi)) {
      result.outcome = IpmOutcome::Diverged;
      return result;
    }
    if (mu < best_mu * Scalar(0.9999)) {
      best_mu = mu;
      stall_count = 0;
    } else if (++stall_count > 30) {
      result.outcome = IpmOutcome::Stalled;
      return result;
    }

    bool factor_ok = true;
    for (int b = 0; b < nb && factor_ok; ++b) {
      zllt[b].compute(Z[b]);
      factor_ok = zllt[b].info() == Eigen::Success;
    }
    if (!factor_ok) {
      result.outcome = IpmOutcome::Failed;
      return result;
    }

    // Schur complement M_kj = sum_b tr(F_k X F_j Z^-1) and H = X Rd Z^-1.
    Matrix schur = Matrix::Zero(m, m);
    for (int b = 0; b < nb; ++b) {
      for (int j = 0; j < m; ++j) {
        W[b][j].noalias() = X[b] * zllt[b].solve(blocks[b].coeff[j]).transpose();
      }
      H[b].noalias() = X[b] * zllt[b].solve(Rd[b]).transpose();
      for (int k = 0; k < m; ++k) {
        for (int j = 0; j <= k; ++j) {
          schur(k, j) += blocks[b].coeff[k].cwiseProduct(W[b][j].transpose()).sum();
        }
      }
    }
    for (int k = 0; k < m; ++k) {
      for (int j = k + 1; j < m; ++j) schur(k, j) = schur(j, k);
    }

    // Equilibrate before factoring; the Schur complement turns severely
    // ill-conditioned as the iterates approach a low-rank optimal face.
    Vector scale(m);
    for (int k = 0; k < m; ++k) {
      scale[k] = Scalar(1) / std::sqrt(std::max(schur(k, k), Scalar(1e-30)));
    }
    Matrix scaled = scale.asDiagonal() * schur * scale.asDiagonal();
    Eigen::LDLT<Matrix> mldlt(scaled);
    if (mldlt.info() != Eigen::Success || !mldlt.isPositive()) {
      const Scalar reg = Scalar(1e-13);
      mldlt.compute(scaled + reg * Matrix::Identity(m, m));
      if (mldlt.info() != Eigen::Success) {
        result.outcome = IpmOutcome::Failed;
        return result;
      }
    }
    const auto solve_schur = [&](const Vector& rhs) {
      const Vector scaled_rhs = scale.asDiagonal() * rhs;
      Vector dz = mldlt.solve(scaled_rhs);
      dz += mldlt.solve(scaled_rhs - scaled * dz);  // one refinement step
      return (scale.asDiagonal() * dz).eval();
    };

    // Predictor: pure Newton step toward complementarity zero.
    Vector rhs(m);
    for (int k = 0; k < m; ++k) {
      Scalar v = -c[k];
      for (int b = 0; b < nb; ++b) {
        v -= blocks[b].coeff[k].cwiseProduct(H[b].transpose()).sum();
      }
      rhs[k] = v;
    }
    const Vector dy_aff = solve_schur(rhs);
    for (int b = 0; b < nb; ++b) {
      dZa[b] = Rd[b];
      dXa[b] = -X[b] - H[b];
      for (int k = 0; k < m; ++k) {
        dZa[b] += dy_aff[k] * blocks[b].coeff[k];
        dXa[b] -= dy_aff[k] * W[b][k];
      }
      dXa[b] = ((dXa[b] + dXa[b].transpose()) / Scalar(2)).eval();
    }
    Scalar alpha_p = 1, alpha_d = 1;
    for (int b = 0; b < nb; ++b) {
      alpha_p = std::min(alpha_p, max_step(X[b], dXa[b]));
      alpha_d = std::min(alpha_d, max_step(Z[b], dZa[b]));
    }
    Scalar mu_aff = 0;
    for (int b = 0; b < nb; ++b) {
      mu_aff += (X[b] + alpha_p * dXa[b]).cwiseProduct(Z[b] + alpha_d * dZa[b]).sum();
    }
    mu_aff = std::max(mu_aff / Scalar(total_dim), Scalar(0));
    const Scalar ratio = mu_aff / mu;
    const Scalar sigma = std::min(Scalar(1), std::max(Scalar(1e-8), ratio * ratio * ratio));
    const Scalar nu = sigma * mu;

    // Corrector with the Mehrotra second-order term.
    for (int b = 0; b < nb; ++b) {
      const auto dim = blocks[b].constant.rows();
      Matrix target = nu * Matrix::Identity(dim, dim) - dXa[b] * dZa[b];
      corr[b].noalias() = zllt[b].solve(target.transpose()).transpose();
    }
    for (int k = 0; k < m; ++k) {
      Scalar v = -c[k];
      for (int b = 0; b < nb; ++b) {
        v += blocks[b].coeff[k].cwiseProduct((corr[b] - H[b]).transpose()).sum();
      }
      rhs[k] = v;
    }
    const Vector dy = solve_schur(rhs);
    for (int b = 0; b < nb; ++b) {
      dZ[b] = Rd[b];
      dX[b] = corr[b] - X[b] - H[b];
      for (int k = 0; k < m; ++k) {
        dZ[b] += dy[k] * blocks[b].coeff[k];
        dX[b] -= dy[k] * W[b][k];
      }
      dX[b] = ((dX[b] + dX[b].transpose()) / Scalar(2)).eval();
    }

    alpha_p = alpha_d = std::numeric_limits<Scalar>::infinity();
    for (int b = 0; b < nb; ++b) {
      alpha_p = std::min(alpha_p, max_step(X[b], dX[b]));
      alpha_d = std::min(alpha_d, max_step(Z[b], dZ[b]));
    }
    // Step closer to the boundary once the gap is nearly closed; the early
    // iterations keep a wider safety margin.
    const Scalar frac = mu < Scalar(1e-4) * xi ? Scalar(0.98) : Scalar(0.95);
    alpha_p = std::min(Scalar(1), frac * alpha_p);
    alpha_d = std::min(Scalar(1), frac * alpha_d);
    if (!(alpha_p > 0) || !(alpha_d > 0)) {
      result.outcome = IpmOutcome::Stalled;
      return result;
    }

    for (int b = 0; b < nb; ++b) {
      X[b] += alpha_p * dX[b];
      Z[b] += alpha_d * dZ[b];
      X[b] = ((X[b] + X[b].transpose()) / Scalar(2)).eval();
      Z[b] = ((Z[b] + Z[b].transpose()) / Scalar(2)).eval();
    }
    result.y += alpha_d * dy;
  }
  result.outcome = IpmOutcome::IterationLimit;
  return result;
}

// Phase-I companion problem: min t with every block shifted by t I and the
// slack floored at -1 so the program stays bounded.
template <typename Scalar>
ConicProblemT<Scalar> make_phase1(const ConicProblemT<Scalar>& problem) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  const int m = problem.num_vars();
  ConicProblemT<Scalar> phase1;
  phase1.objective = Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(m + 1);
  phase1.objective[m] = Scalar(-1);  // maximize -t
  for (const auto& block : problem.blocks) {
    ConicBlockT<Scalar> b;
    b.constant = block.constant;
    b.coeff = block.coeff;
    b.coeff.push_back(Matrix::Identity(block.constant.rows(), block.constant.rows()));
    phase1.blocks.push_back(std::move(b));
  }
  ConicBlockT<Scalar> floor;
  floor.constant = Matrix::Ones(1, 1);
  floor.coeff.assign(m, Matrix::Zero(1, 1));
  floor.coeff.push_back(Matrix::Ones(1, 1));
  phase1.blocks.push_back(std::move(floor));
  return phase1;
}

}  // namespace conic_detail

template <typename Scalar>
Scalar min_block_eigenvalue(const ConicProblemT<Scalar>& problem,
                            const Eigen::Vector<Scalar, Eigen::Dynamic>& y) {
  Scalar worst = std::numeric_limits<Scalar>::infinity();
  for (const auto& block : problem.blocks) {
    worst = std::min(worst, min_eigenvalue(block.value_at(y)));
  }
  return worst;
}

template <typename Scalar>
ConicSolutionT<Scalar> solve_feasibility(const ConicProblemT<Scalar>& problem,
                                         const SolverOptions& options = {});

// Maximize objective . y over the blocks. Callers are expected to have
// established strict feasibility (see solve_feasibility); divergence is
// classified through an internal phase-I run.
template <typename Scalar>
ConicSolutionT<Scalar> solve_optimize(const ConicProblemT<Scalar>& problem,
                                      const SolverOptions& options = {}) {
  problem.validate();
  if (!(options.tolerance > 0)) throw std::invalid_argument("tolerance must be positive");

  auto ipm = conic_detail::ipm_minimize(problem.blocks,
                                        (-problem.objective).eval(), options);
  ConicSolutionT<Scalar> solution;
  solution.y = ipm.y;
  solution.iterations = ipm.iterations;
  solution.primal_residual = ipm.primal_res;
  solution.dual_residual = ipm.dual_res;
  solution.duality_gap = ipm.rel_gap;
  solution.objective = problem.objective.dot(ipm.y);

  switch (ipm.outcome) {
    case conic_detail::IpmOutcome::Converged: {
      const Scalar certificate = min_block_eigenvalue(problem, solution.y);
      if (certificate < -Scalar(10) * options.tolerance) {
        solution.status = SolveStatus::NumericalTrouble;
        solution.message = "converged iterate fails the eigenvalue certificate";
      } else {
        solution.status = SolveStatus::Optimal;
      }
      return solution;
    }
    default: {
      // No convergence: decide between infeasible data, a runaway objective
      // and plain numerical trouble with a phase-I run.
      const auto phase1 = solve_feasibility(problem, options);
      if (phase1.status == SolveStatus::Infeasible) {
        solution.status = SolveStatus::Infeasible;
        solution.message = "no feasible point (phase-I margin " +
                           std::to_string(phase1.phase1_margin) + ")";
      } else if (phase1.status == SolveStatus::Feasible &&
                 ipm.outcome == conic_detail::IpmOutcome::Diverged) {
        solution.status = SolveStatus::Unbounded;
        solution.message = "objective diverges over a feasible cone";
      } else {
        solution.status = SolveStatus::NumericalTrouble;
        solution.message = ipm.outcome == conic_detail::IpmOutcome::IterationLimit
                               ? "iteration limit reached"
                               : ipm.outcome == conic_detail::IpmOutcome::Diverged
                                     ? "iterates diverged; feasibility unresolved"
                                     : "search direction collapsed";
      }
      return solution;
    }
  }
}

// Phase-I feasibility: minimize the uniform slack t with F(y) + t I >= 0.
// Strictly feasible problems report t* <= -tol, infeasible ones t* >= tol;
// the band in between is numerical no-man's-land and reported as such.
template <typename Scalar>
ConicSolutionT<Scalar> solve_feasibility(const ConicProblemT<Scalar>& problem,
                                         const SolverOptions& options) {
  problem.validate();
  if (!(options.tolerance > 0)) throw std::invalid_argument("tolerance must be positive");

  const int m = problem.num_vars();
  const auto phase1 = conic_detail::make_phase1(problem);
  auto ipm = conic_detail::ipm_minimize(phase1.blocks, (-phase1.objective).eval(),
                                        options);

  ConicSolutionT<Scalar> solution;
  solution.iterations = ipm.iterations;
  solution.primal_residual = ipm.primal_res;
  solution.dual_residual = ipm.dual_res;
  solution.duality_gap = ipm.rel_gap;
  if (ipm.outcome != conic_detail::IpmOutcome::Converged) {
    solution.y = ipm.y.head(m);
    solution.status = SolveStatus::NumericalTrouble;
    solution.message = "phase-I did not converge";
    return solution;
  }
  const Scalar margin = ipm.y[m];
  solution.phase1_margin = margin;
  solution.y = ipm.y.head(m);
  if (margin <= -options.tolerance) {
    solution.status = SolveStatus::Feasible;
    if (min_block_eigenvalue(problem, solution.y) < -options.tolerance) {
      solution.status = SolveStatus::NumericalTrouble;
      solution.message = "phase-I point fails the eigenvalue certificate";
    }
  } else if (margin >= options.tolerance) {
    solution.status = SolveStatus::Infeasible;
  } else {
    solution.status = SolveStatus::NumericalTrouble;
    solution.message = "phase-I margin within tolerance of zero; verdict withheld";
  }
  return solution;
}

// Equality-constrained nonnegative LP routed through the dedicated dense
// simplex path: optimize c . w subject to A w = b, w >= 0.
enum class LpSense { Minimize, Maximize };

template <typename Scalar>
struct LpProblemT {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> A;
  Eigen::Vector<Scalar, Eigen::Dynamic> b;
  Eigen::Vector<Scalar, Eigen::Dynamic> c;
};

template <typename Scalar>
struct LpSolutionT {
  SolveStatus status = SolveStatus::NumericalTrouble;
  Eigen::Vector<Scalar, Eigen::Dynamic> w;
  Scalar objective = std::numeric_limits<Scalar>::quiet_NaN();
  int iterations = 0;
};

using LpProblem = LpProblemT<double>;
using LpSolution = LpSolutionT<double>;

template <typename Scalar>
LpSolutionT<Scalar> solve_lp(const LpProblemT<Scalar>& problem, LpSense sense,
                             const SolverOptions& options = {}) {
  Eigen::Vector<Scalar, Eigen::Dynamic> cost =
      sense == LpSense::Maximize ? (-problem.c).eval() : problem.c;
  const auto res =
      solve_standard_lp<Scalar>(problem.A, problem.b, cost, options.lp_max_iterations);

  LpSolutionT<Scalar> out;
  out.w = res.x;
  out.iterations = res.iterations;
  switch (res.status) {
    case SimplexStatus::Optimal:
      out.status = SolveStatus::Optimal;
      out.objective = problem.c.dot(res.x);
      break;
    case SimplexStatus::Infeasible:
      out.status = SolveStatus::Infeasible;
      break;
    case SimplexStatus::Unbounded:
      out.status = SolveStatus::Unbounded;
      break;
    case SimplexStatus::IterationLimit:
      out.status = SolveStatus::NumericalTrouble;
      break;
  }
  return out;
}

// Plain-text dump for external cross-checking: a dimension header per block,
// then each matrix as row-major lower-triangle entries.
void dump_problem(const ConicProblem& problem, std::ostream& os);

}  // namespace statearb
