#include "statearb/arbitrage_engine.hpp"

#include <cmath>
#include <sstream>

namespace statearb {

namespace {

std::vector<BlockInfo> block_infos(const MomentProblem& problem) {
  std::vector<BlockInfo> infos;
  infos.reserve(problem.blocks.size());
  for (const LmiBlock& b : problem.blocks) infos.push_back({b.label, b.dim});
  return infos;
}

SolverDiagnostics diagnostics_of(const ConicSolution& s) {
  return {s.status, s.iterations, s.primal_residual, s.dual_residual,
          s.duality_gap, s.message};
}

std::string describe(const PayoffGenerator& payoff) {
  if (!payoff.name().empty()) return payoff.name();
  std::ostringstream os;
  os << "|a.x - " << payoff.offset() << "|";
  return os.str();
}

}  // namespace

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::RelaxationInfeasible: return "arbitrage_certified_at_degree";
    case Verdict::RelaxationFeasible: return "no_arbitrage_detected_at_degree";
    case Verdict::Marginal: return "marginal_at_degree";
  }
  return "unknown";
}

InfeasibleMarketError::InfeasibleMarketError(ArbitrageReport report)
    : std::runtime_error("base market fails the degree-" +
                         std::to_string(report.degree) + " relaxation"),
      report_(std::move(report)) {}

ConicProblem to_conic(const MomentProblem& problem) {
  const int m = problem.index.num_slots();
  ConicProblem conic;
  conic.objective = Eigen::VectorXd::Zero(m);
  conic.blocks.reserve(problem.blocks.size());
  for (const LmiBlock& block : problem.blocks) {
    ConicBlock cb;
    cb.constant = Eigen::MatrixXd::Zero(block.dim, block.dim);
    cb.coeff.assign(m, Eigen::MatrixXd::Zero(block.dim, block.dim));
    for (int i = 0; i < block.dim; ++i) {
      for (int j = 0; j < block.dim; ++j) {
        const AffineExpr& cell = block.at(i, j);
        cb.constant(i, j) = cell.constant;
        for (const auto& [slot, coeff] : cell.terms) cb.coeff[slot](i, j) = coeff;
      }
    }
    conic.blocks.push_back(std::move(cb));
  }
  return conic;
}

ArbitrageReport check_no_arbitrage(const MarketInstance& market,
                                   const EngineOptions& options) {
  market.validate();

  ArbitrageReport report;
  report.degree = market.degree;

  const auto trivial = market.trivial_arbitrage();
  if (!trivial.empty()) {
    report.verdict = Verdict::RelaxationInfeasible;
    std::ostringstream os;
    for (std::size_t i = 0; i < trivial.size(); ++i) os << (i ? "; " : "") << trivial[i];
    report.note = os.str();
    return report;
  }

  const MomentProblem problem = assemble(market, market.degree);
  report.beta = problem.beta.value;
  report.blocks = block_infos(problem);

  const ConicSolution solution = solve_feasibility(to_conic(problem), options.solver);
  report.diagnostics = diagnostics_of(solution);
  report.phase1_margin = solution.phase1_margin;

  switch (solution.status) {
    case SolveStatus::Feasible: {
      report.verdict = Verdict::RelaxationFeasible;
      const auto names = problem.index.slot_names();
      for (int s = 0; s < problem.index.num_slots(); ++s) {
        report.moments.emplace_back(names[s], solution.y[s]);
      }
      break;
    }
    case SolveStatus::Infeasible:
      report.verdict = Verdict::RelaxationInfeasible;
      break;
    default:
      report.verdict = Verdict::Marginal;
      break;
  }
  return report;
}

BoundResult price_bounds(const MarketInstance& market, const PayoffGenerator& target,
                         BoundDirection direction, const EngineOptions& options) {
  market.validate();

  {
    ArbitrageReport base = check_no_arbitrage(market, options);
    if (base.verdict != Verdict::RelaxationFeasible) {
      throw InfeasibleMarketError(std::move(base));
    }
  }

  const int d = market.degree;
  const MomentProblem problem = assemble_with_target(market, target, d);

  BoundResult result;
  result.target_name = describe(target);
  result.direction = direction;
  result.degree = d;
  result.beta = problem.beta.value;
  result.blocks = block_infos(problem);

  // The target's moment as an affine expression; pinned targets need no solve.
  Eigen::VectorXi raw = Eigen::VectorXi::Zero(problem.index.generators().size());
  {
    int target_id = -1;
    for (int i = 0; i < problem.index.generators().size(); ++i) {
      if (problem.index.generators()[i].same_payoff(target)) target_id = i;
    }
    raw[target_id] = 1;
  }
  const AffineExpr objective = problem.index.moment_of_exponents(raw);
  if (objective.is_constant()) {
    result.value = objective.constant;
    result.diagnostics.status = SolveStatus::Optimal;
    result.diagnostics.message = "target price is pinned by the quotes";
    return result;
  }

  ConicProblem conic = to_conic(problem);
  const double sign = direction == BoundDirection::Upper ? 1.0 : -1.0;
  for (const auto& [slot, coeff] : objective.terms) {
    conic.objective[slot] = sign * coeff;
  }

  const ConicSolution solution = solve_optimize(conic, options.solver);
  result.diagnostics = diagnostics_of(solution);
  if (solution.status != SolveStatus::Optimal) {
    if (solution.status == SolveStatus::Infeasible) {
      ArbitrageReport report;
      report.degree = d;
      report.diagnostics = result.diagnostics;
      throw InfeasibleMarketError(std::move(report));
    }
    throw std::runtime_error("price bound solve failed: " +
                             to_string(solution.status) +
                             (solution.message.empty() ? "" : " (" + solution.message + ")"));
  }
  result.value = sign * solution.objective + objective.constant;
  return result;
}

std::vector<BoundResult> bound_vs_degree(const MarketInstance& market,
                                         const PayoffGenerator& target,
                                         BoundDirection direction,
                                         const std::vector<int>& degrees,
                                         const EngineOptions& options) {
  for (std::size_t i = 1; i < degrees.size(); ++i) {
    if (degrees[i] <= degrees[i - 1]) {
      throw std::invalid_argument("bound_vs_degree: degrees must increase");
    }
  }
  std::vector<BoundResult> results;
  for (int d : degrees) {
    MarketInstance at_degree = market;
    at_degree.degree = d;
    try {
      results.push_back(price_bounds(at_degree, target, direction, options));
    } catch (const std::exception& e) {
      throw std::runtime_error("bound_vs_degree: degree " + std::to_string(d) +
                               " failed: " + e.what());
    }
    if (results.size() >= 2) {
      const double prev = results[results.size() - 2].value;
      const double cur = results.back().value;
      const bool violated = direction == BoundDirection::Upper ? cur > prev + 1e-6
                                                               : cur < prev - 1e-6;
      if (violated) {
        throw std::runtime_error(
            "bound_vs_degree: hierarchy not monotone between degrees " +
            std::to_string(degrees[results.size() - 2]) + " and " + std::to_string(d));
      }
    }
  }
  return results;
}

}  // namespace statearb
