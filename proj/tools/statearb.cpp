// Command-line front end: `check` screens a market file for arbitrage,
// `bound` computes no-arbitrage price bounds for a target payoff, `oracle`
// cross-checks with the grid LP, `martingale` tests two-maturity marginals.
// Exit codes: 0 consistent/feasible, 1 arbitrage/infeasible, 2 marginal or
// numerical trouble, 64 input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "statearb/market_json.hpp"
#include "statearb/version.hpp"

namespace {

constexpr int kExitConsistent = 0;
constexpr int kExitArbitrage = 1;
constexpr int kExitMarginal = 2;
constexpr int kExitInputError = 64;

void emit(const nlohmann::json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write report to " + out_path);
    out << text;
  }
}

statearb::SolverOptions solver_options(double tol) {
  statearb::SolverOptions options;
  options.tolerance = tol;
  if (const char* cap = std::getenv("STATEARB_MAX_ITERATIONS")) {
    const int value = std::atoi(cap);
    if (value > 0) options.max_iterations = value;
  }
  return options;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Moment-based arbitrage screening and price bounds for one-period markets"};
  app.set_version_flag("--version", std::string(statearb::kToolVersion));
  app.require_subcommand(1);

  std::string market_path, out_path, target_text, direction_text = "upper";
  std::string mu_path, nu_path;
  int degree = 0;  // 0 = use the market file's degree
  double tol = 1e-7;
  int grid_points = 51;

  CLI::App* check = app.add_subcommand("check", "test quoted prices for consistency");
  check->add_option("file", market_path, "market JSON file")->required();
  check->add_option("--degree", degree, "relaxation degree override")->check(CLI::PositiveNumber);
  check->add_option("--tol", tol, "solver tolerance");
  check->add_option("--out", out_path, "write the JSON report here instead of stdout");

  CLI::App* bound = app.add_subcommand("bound", "price bounds for a target payoff");
  bound->add_option("file", market_path, "market JSON file")->required();
  bound->add_option("--target", target_text, "asset name or kind(lincomb, strike)")
      ->required();
  bound->add_option("--direction", direction_text, "upper or lower")
      ->check(CLI::IsMember({"upper", "lower"}));
  bound->add_option("--degree", degree, "relaxation degree override")->check(CLI::PositiveNumber);
  bound->add_option("--tol", tol, "solver tolerance");
  bound->add_option("--out", out_path, "write the JSON report here instead of stdout");

  CLI::App* oracle = app.add_subcommand("oracle", "grid LP cross-check");
  oracle->add_option("file", market_path, "market JSON file")->required();
  oracle->add_option("--grid", grid_points, "uniform points per axis");
  oracle->add_option("--target", target_text, "optional bound target");
  oracle->add_option("--direction", direction_text, "upper or lower")
      ->check(CLI::IsMember({"upper", "lower"}));
  oracle->add_option("--out", out_path, "write the JSON report here instead of stdout");

  CLI::App* martingale =
      app.add_subcommand("martingale", "martingale transition between two marginals");
  martingale->add_option("mu", mu_path, "earlier marginal (JSON: points + weights)")
      ->required();
  martingale->add_option("nu", nu_path, "later marginal (JSON: points + weights)")
      ->required();
  martingale->add_option("--tol", tol, "feasibility tolerance");
  martingale->add_option("--out", out_path, "write the JSON report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  using namespace statearb;
  const BoundDirection direction =
      direction_text == "upper" ? BoundDirection::Upper : BoundDirection::Lower;

  try {
    if (check->parsed()) {
      std::string digest;
      ParsedMarket parsed = load_market_file(market_path, &digest);
      if (degree > 0) parsed.market.degree = degree;
      EngineOptions options{solver_options(tol)};
      const ArbitrageReport report = check_no_arbitrage(parsed.market, options);
      emit(check_report_json(parsed.market, parsed.conversions, report, digest), out_path);
      switch (report.verdict) {
        case Verdict::RelaxationFeasible: return kExitConsistent;
        case Verdict::RelaxationInfeasible: return kExitArbitrage;
        case Verdict::Marginal: return kExitMarginal;
      }
    }

    if (bound->parsed()) {
      std::string digest;
      ParsedMarket parsed = load_market_file(market_path, &digest);
      if (degree > 0) parsed.market.degree = degree;
      const TargetSpec target = parse_target_spec(target_text, parsed.market);
      EngineOptions options{solver_options(tol)};
      try {
        const BoundResult result =
            price_bounds(parsed.market, target.payoff, direction, options);
        emit(bound_report_json(parsed.market, parsed.conversions, target, result, digest),
             out_path);
        return kExitConsistent;
      } catch (const InfeasibleMarketError& e) {
        emit(check_report_json(parsed.market, parsed.conversions, e.report(), digest),
             out_path);
        return kExitArbitrage;
      }
    }

    if (oracle->parsed()) {
      std::string digest;
      ParsedMarket parsed = load_market_file(market_path, &digest);
      const OracleResult feas = oracle_feasible(parsed.market, grid_points);
      std::optional<TargetSpec> target;
      std::optional<BoundDirection> dir;
      std::optional<double> value;
      if (!target_text.empty() && feas.feasible) {
        target = parse_target_spec(target_text, parsed.market);
        dir = direction;
        value = oracle_bound(parsed.market, target->payoff, direction, grid_points);
      }
      emit(oracle_report_json(parsed.market, parsed.conversions, feas, target, dir, value,
                              digest),
           out_path);
      return feas.feasible ? kExitConsistent : kExitArbitrage;
    }

    if (martingale->parsed()) {
      std::string digest_mu, digest_nu;
      const DiscreteMeasure mu = load_measure_file(mu_path, &digest_mu);
      const DiscreteMeasure nu = load_measure_file(nu_path, &digest_nu);
      const TransitionResult transition = find_transition(mu, nu, tol);
      std::optional<ConvexOrderReport> convex;
      if (mu.points.front().size() == 1) convex = convex_order_check(mu, nu, tol);
      emit(martingale_report_json(transition, convex, digest_mu + "," + digest_nu),
           out_path);
      return transition.feasible ? kExitConsistent : kExitArbitrage;
    }
  } catch (const SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ValidationError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const GridCapExceeded& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
