#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>
#include <sstream>

#include "statearb/conic_solver.hpp"
#include "test_support.hpp"

using namespace statearb;

namespace {

ConicBlock block1x1(double constant, std::vector<double> coeffs) {
  ConicBlock b;
  b.constant = Eigen::MatrixXd::Constant(1, 1, constant);
  for (double c : coeffs) b.coeff.push_back(Eigen::MatrixXd::Constant(1, 1, c));
  return b;
}

// [[1, y], [y, 1]] >= 0
ConicProblem unit_disc_problem() {
  ConicProblem p;
  p.objective = Eigen::VectorXd::Zero(1);
  ConicBlock b;
  b.constant = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd f(2, 2);
  f << 0, 1, 1, 0;
  b.coeff.push_back(f);
  p.blocks.push_back(b);
  return p;
}

}  // namespace

TEST_CASE("feasibility: identity block is strictly feasible with margin -1") {
  const auto sol = solve_feasibility(unit_disc_problem());
  CHECK(sol.status == SolveStatus::Feasible);
  CHECK(sol.phase1_margin == doctest::Approx(-1.0).epsilon(1e-5));
  CHECK(std::abs(sol.y[0]) < 1e-4);
}

TEST_CASE("feasibility: negative constant with no variables is infeasible") {
  ConicProblem p;
  p.objective = Eigen::VectorXd::Zero(0);
  p.blocks.push_back(block1x1(-1.0, {}));
  const auto sol = solve_feasibility(p);
  CHECK(sol.status == SolveStatus::Infeasible);
  CHECK(sol.phase1_margin == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("feasibility: conflicting scalar blocks, margin 1/2") {
  ConicProblem p;
  p.objective = Eigen::VectorXd::Zero(1);
  p.blocks.push_back(block1x1(0.0, {1.0}));    // y >= 0
  p.blocks.push_back(block1x1(-1.0, {-1.0}));  // -y - 1 >= 0
  const auto sol = solve_feasibility(p);
  CHECK(sol.status == SolveStatus::Infeasible);
  CHECK(sol.phase1_margin == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("optimize: max y over the unit 2x2 determinant gives 1") {
  ConicProblem p = unit_disc_problem();
  p.objective[0] = 1.0;
  const auto sol = solve_optimize(p);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("optimize: diagonal LP as SDP") {
  // max y1 + y2 s.t. diag(1 - y1, 1 - y2, y1, y2) >= 0
  ConicProblem p;
  p.objective = Eigen::VectorXd::Ones(2);
  ConicBlock b;
  b.constant = Eigen::MatrixXd::Zero(4, 4);
  b.constant.diagonal() << 1, 1, 0, 0;
  Eigen::MatrixXd f1 = Eigen::MatrixXd::Zero(4, 4);
  f1.diagonal() << -1, 0, 1, 0;
  Eigen::MatrixXd f2 = Eigen::MatrixXd::Zero(4, 4);
  f2.diagonal() << 0, -1, 0, 1;
  b.coeff = {f1, f2};
  p.blocks.push_back(b);
  const auto sol = solve_optimize(p);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(sol.y[0] == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(sol.y[1] == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("optimize: y2 capped by a second block") {
  // max y2 s.t. [[1, y1], [y1, y2]] >= 0 and [[2 - y2]] >= 0
  ConicProblem p;
  p.objective = Eigen::VectorXd::Zero(2);
  p.objective[1] = 1.0;
  ConicBlock b;
  b.constant = Eigen::MatrixXd::Zero(2, 2);
  b.constant(0, 0) = 1.0;
  Eigen::MatrixXd f1 = Eigen::MatrixXd::Zero(2, 2);
  f1(0, 1) = f1(1, 0) = 1.0;
  Eigen::MatrixXd f2 = Eigen::MatrixXd::Zero(2, 2);
  f2(1, 1) = 1.0;
  b.coeff = {f1, f2};
  p.blocks.push_back(b);
  p.blocks.push_back(block1x1(2.0, {0.0, -1.0}));
  const auto sol = solve_optimize(p);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("min_eigenvalue") {
  Eigen::MatrixXd d(2, 2);
  d << 1, 0, 0, 2;
  CHECK(min_eigenvalue(d) == doctest::Approx(1.0));
  Eigen::MatrixXd o(2, 2);
  o << 0, 1, 1, 0;
  CHECK(min_eigenvalue(o) == doctest::Approx(-1.0));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd a(5, 5);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) a(i, j) = u(rng);
    }
    CHECK(min_eigenvalue((a.transpose() * a).eval()) >= -1e-12);
  }

  Eigen::MatrixXd bad = Eigen::MatrixXd::Constant(2, 2, std::nan(""));
  CHECK_THROWS_AS(min_eigenvalue(bad), std::invalid_argument);
}

TEST_CASE("solve_lp basics") {
  LpProblem p;
  p.A = Eigen::MatrixXd::Ones(1, 2);
  p.b = Eigen::VectorXd::Ones(1);
  p.c = Eigen::VectorXd::Zero(2);
  p.c[0] = 1.0;

  auto lo = solve_lp(p, LpSense::Minimize);
  REQUIRE(lo.status == SolveStatus::Optimal);
  CHECK(lo.objective == doctest::Approx(0.0));

  auto hi = solve_lp(p, LpSense::Maximize);
  REQUIRE(hi.status == SolveStatus::Optimal);
  CHECK(hi.objective == doctest::Approx(1.0));
}

TEST_CASE("solve_lp: moment matching on {0, 1/2, 1}") {
  // weights with mass 1 and mean 1/2; maximize the weight at 1/2.
  LpProblem p;
  p.A.resize(2, 3);
  p.A << 1, 1, 1, 0.0, 0.5, 1.0;
  p.b.resize(2);
  p.b << 1.0, 0.5;
  p.c = Eigen::VectorXd::Zero(3);
  p.c[1] = 1.0;
  const auto sol = solve_lp(p, LpSense::Maximize);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(1.0));

  // And an infeasible right-hand side: mean above the support.
  p.b[1] = 1.2;
  CHECK(solve_lp(p, LpSense::Maximize).status == SolveStatus::Infeasible);
}

TEST_CASE("solve_lp: unbounded direction is flagged") {
  LpProblem p;
  p.A.resize(1, 2);
  p.A << 1, -1;
  p.b = Eigen::VectorXd::Zero(1);
  p.c = Eigen::VectorXd::Zero(2);
  p.c[0] = 1.0;
  CHECK(solve_lp(p, LpSense::Maximize).status == SolveStatus::Unbounded);
}

TEST_CASE("certificates hold on random strictly feasible problems") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> vars(1, 12);
  std::uniform_int_distribution<int> blocks(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd y0;
    const ConicProblem p =
        testing::random_feasible_sdp(rng, vars(rng), blocks(rng), 6, &y0);
    const auto sol = solve_optimize(p);
    REQUIRE_MESSAGE(sol.status == SolveStatus::Optimal, "trial ", trial, ": ", sol.message);
    CHECK(min_block_eigenvalue(p, sol.y) >= -1e-6);
    CHECK(sol.duality_gap <= 1e-6);
    // Duality sandwich: the known interior point bounds the maximum from
    // below, the certificate keeps the reported value from drifting above.
    CHECK(sol.objective >= p.objective.dot(y0) - 1e-6);
  }
}

TEST_CASE("optimize on infeasible constraints reports infeasibility, not a crash") {
  ConicProblem p;
  p.objective = Eigen::VectorXd::Ones(1);
  p.blocks.push_back(block1x1(0.0, {1.0}));    // y >= 0
  p.blocks.push_back(block1x1(-1.0, {-1.0}));  // y <= -1
  const auto sol = solve_optimize(p);
  CHECK(sol.status == SolveStatus::Infeasible);
}

TEST_CASE("duality sandwich on a hand-checkable instance") {
  // max y s.t. [[1, y], [y, 1]] >= 0: any feasible y is a lower bound for
  // the optimum and 1 is the analytic value.
  ConicProblem p = unit_disc_problem();
  p.objective[0] = 1.0;
  const auto sol = solve_optimize(p);
  REQUIRE(sol.status == SolveStatus::Optimal);
  CHECK(sol.objective >= 0.5);        // y = 0.5 is feasible
  CHECK(sol.objective <= 1.0 + 1e-7); // analytic optimum
}

TEST_CASE("determinism: identical inputs give identical answers") {
  std::mt19937_64 rng(99);
  const ConicProblem p = testing::random_feasible_sdp(rng, 8, 2, 5);
  const auto a = solve_optimize(p);
  const auto b = solve_optimize(p);
  CHECK(a.status == b.status);
  CHECK(std::abs(a.objective - b.objective) <= 1e-9);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("phase-I margin is monotone when blocks are added") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    ConicProblem p = testing::random_feasible_sdp(rng, 5, 2, 4);
    const double before = solve_feasibility(p).phase1_margin;
    ConicBlock extra;
    extra.constant = Eigen::MatrixXd::Constant(1, 1, 0.3);
    extra.coeff.assign(5, Eigen::MatrixXd::Zero(1, 1));
    extra.coeff[0](0, 0) = 1.0;
    p.blocks.push_back(extra);
    const double after = solve_feasibility(p).phase1_margin;
    CHECK(after >= before - 1e-6);
  }
}

TEST_CASE("input validation") {
  ConicProblem p;
  p.objective = Eigen::VectorXd::Zero(2);
  ConicBlock b;
  b.constant = Eigen::MatrixXd::Identity(2, 2);
  b.coeff.push_back(Eigen::MatrixXd::Zero(2, 2));  // one coeff for two vars
  p.blocks.push_back(b);
  CHECK_THROWS_AS(solve_feasibility(p), std::invalid_argument);

  ConicProblem q = unit_disc_problem();
  SolverOptions opts;
  opts.tolerance = -1.0;
  CHECK_THROWS_AS(solve_feasibility(q, opts), std::invalid_argument);
}

TEST_CASE("iteration cap reports numerical trouble") {
  ConicProblem p = unit_disc_problem();
  p.objective[0] = 1.0;
  SolverOptions opts;
  opts.max_iterations = 2;
  const auto sol = solve_optimize(p, opts);
  CHECK(sol.status == SolveStatus::NumericalTrouble);
}

TEST_CASE("problem dump is parseable text") {
  ConicProblem p = unit_disc_problem();
  p.objective[0] = 0.25;
  std::ostringstream os;
  dump_problem(p, os);
  const std::string text = os.str();
  CHECK(text.find("conic-problem vars=1 blocks=1") != std::string::npos);
  CHECK(text.find("dim=2") != std::string::npos);
}
