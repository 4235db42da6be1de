#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "statearb/conic_solver.hpp"
#include "statearb/grid_oracle.hpp"
#include "statearb/moment_assembler.hpp"
#include "test_support.hpp"

using namespace statearb;

namespace {

MarketInstance single_asset(double price) {
  MarketInstance m;
  m.asset_names = {"x1"};
  m.asset_prices = Eigen::VectorXd::Constant(1, price);
  m.support_max = Eigen::VectorXd::Ones(1);
  return m;
}

MarketInstance with_straddle(MarketInstance m, double strike, double price) {
  Eigen::VectorXd a(1);
  a << 1.0;
  DerivativeQuote q;
  q.payoff = PayoffGenerator::abs_linear(a, strike, "st");
  q.price = price;
  m.derivatives.push_back(q);
  return m;
}

PayoffGenerator call_target(double strike) {
  Eigen::VectorXd a(1);
  a << 1.0;
  return PayoffGenerator::abs_linear(a, strike, "target");
}

}  // namespace

TEST_CASE("grid construction") {
  Grid g = Grid::uniform(Eigen::VectorXd::Ones(2), 3);
  CHECK(g.total_points() == 9);
  CHECK(g.axis(0) == std::vector<double>{0.0, 0.5, 1.0});
  g.insert(0, 0.4);
  CHECK(g.axis(0) == std::vector<double>{0.0, 0.4, 0.5, 1.0});
  g.insert(0, 0.4);  // duplicate ignored
  CHECK(g.total_points() == 12);
  g.insert(1, 2.0);  // out of range ignored
  CHECK(g.total_points() == 12);
  CHECK_THROWS_AS(Grid::uniform(Eigen::VectorXd::Ones(1), 1), std::invalid_argument);
}

TEST_CASE("feasible mean on a coarse grid with a point-mass witness") {
  const auto res = oracle_feasible(single_asset(0.5), 3);
  CHECK(res.feasible);
  CHECK(res.max_violation <= 1e-10);
  CHECK(res.witness.mean()[0] == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("mean above the support is infeasible at every grid") {
  for (int L : {3, 11, 101}) {
    const auto res = oracle_feasible(single_asset(1.2), L);
    CHECK_FALSE(res.feasible);
    CHECK(res.max_violation > 0.01);
  }
}

TEST_CASE("straddle at fair value is feasible; the hand measure matches") {
  const MarketInstance m = with_straddle(single_asset(0.5), 0.5, 0.25);
  const auto res = oracle_feasible(m, 101);
  CHECK(res.feasible);

  DiscreteMeasure hand;
  hand.points = {Eigen::VectorXd::Zero(1), Eigen::VectorXd::Constant(1, 0.5),
                 Eigen::VectorXd::Ones(1)};
  hand.weights.resize(3);
  hand.weights << 0.25, 0.5, 0.25;
  CHECK(hand.expectation([](const Eigen::VectorXd& x) { return x[0]; }) ==
        doctest::Approx(0.5));
  CHECK(hand.expectation([](const Eigen::VectorXd& x) {
          return std::abs(x[0] - 0.5);
        }) == doctest::Approx(0.25));
}

TEST_CASE("call bounds: analytic extremal measures are reached") {
  const MarketInstance m = single_asset(0.5);
  const PayoffGenerator target = call_target(0.4);
  // In straddle space: call = (q - K + p) / 2.
  const double upper = oracle_bound(m, target, BoundDirection::Upper, 3);
  const double lower = oracle_bound(m, target, BoundDirection::Lower, 3);
  CHECK(call_price_from_straddle(0.5, 0.4, upper) == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(call_price_from_straddle(0.5, 0.4, lower) == doctest::Approx(0.1).epsilon(1e-7));
}

TEST_CASE("asset target bounds collapse to the pinned mean") {
  const MarketInstance m = single_asset(0.5);
  const PayoffGenerator x1 = PayoffGenerator::asset(0, "x1");
  CHECK(oracle_bound(m, x1, BoundDirection::Upper, 5) ==
        doctest::Approx(0.5).epsilon(1e-9));
  CHECK(oracle_bound(m, x1, BoundDirection::Lower, 5) ==
        doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("pinned target bounds collapse to the quote") {
  MarketInstance m = with_straddle(single_asset(0.5), 0.5, 0.25);
  Eigen::VectorXd a(1);
  a << 1.0;
  const PayoffGenerator same = PayoffGenerator::abs_linear(a, 0.5, "same");
  CHECK(oracle_bound(m, same, BoundDirection::Upper, 33) ==
        doctest::Approx(0.25).epsilon(1e-6));
  CHECK(oracle_bound(m, same, BoundDirection::Lower, 33) ==
        doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("witness reproduces the pinned prices") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto priced = testing::random_feasible_market(rng, 2, 2);
    const auto res = oracle_feasible(priced.market, 21);
    REQUIRE(res.feasible);
    const GeneratorSet gens = priced.market.generators();
    const auto prices = priced.market.generator_prices();
    for (int g = 0; g < gens.size(); ++g) {
      const double repro = res.witness.expectation(
          [&](const Eigen::VectorXd& x) { return gens[g].value_at(x); });
      CHECK(std::abs(repro - *prices[g]) <= 1e-7);
    }
  }
}

TEST_CASE("upper bounds grow along nested grid refinements") {
  MarketInstance m = with_straddle(single_asset(0.5), 0.5, 0.25);
  const PayoffGenerator target = call_target(0.3);
  double prev = -1.0;
  for (int L : {3, 5, 9, 17}) {
    const double v = oracle_bound(m, target, BoundDirection::Upper, L);
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
}

TEST_CASE("grid cap exceeded names the offending count") {
  MarketInstance m;
  m.asset_names = {"x1", "x2", "x3"};
  m.asset_prices = Eigen::VectorXd::Constant(3, 0.5);
  m.support_max = Eigen::VectorXd::Ones(3);
  try {
    oracle_feasible(m, 101);
    FAIL("expected GridCapExceeded");
  } catch (const GridCapExceeded& e) {
    CHECK(e.requested() == 1030301ull);
    CHECK(std::string(e.what()).find("1030301") != std::string::npos);
  }
}

TEST_CASE("infeasible market turns bound queries into errors") {
  CHECK_THROWS(oracle_bound(single_asset(1.2), call_target(0.4),
                            BoundDirection::Upper, 11));
}

TEST_CASE("random measures give PSD assembled blocks through moments_from_measure") {
  std::mt19937_64 rng(23);
  const auto priced = testing::random_feasible_market(rng, 2, 2);
  const MomentProblem problem = assemble(priced.market, 2);
  const Eigen::VectorXd y = problem.index.slot_values([&](const SemigroupElement& e) {
    return priced.measure.expectation([&](const Eigen::VectorXd& x) {
      return evaluate(e, problem.index.generators(), x);
    });
  });
  for (const LmiBlock& block : problem.blocks) {
    CHECK(min_eigenvalue(block.value_at(y)) >= -1e-9);
  }
}
