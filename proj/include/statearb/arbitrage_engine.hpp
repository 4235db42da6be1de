#pragma once

// User-facing core: validates a market, runs the truncated moment relaxation
// at a chosen degree for an arbitrage verdict, and computes no-arbitrage
// price bounds for target payoffs.

#include <string>
#include <vector>

#include "statearb/conic_solver.hpp"
#include "statearb/market.hpp"
#include "statearb/moment_assembler.hpp"

namespace statearb {

enum class Verdict {
  RelaxationInfeasible,  // arbitrage certified at this degree
  RelaxationFeasible,    // no arbitrage detected at this degree
  Marginal,              // phase-I margin within tolerance of zero
};

std::string to_string(Verdict verdict);

struct BlockInfo {
  std::string label;
  int dim = 0;
};

struct SolverDiagnostics {
  SolveStatus status = SolveStatus::NumericalTrouble;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double duality_gap = 0.0;
  std::string message;
};

struct ArbitrageReport {
  Verdict verdict = Verdict::Marginal;
  int degree = 0;
  double beta = 0.0;
  double phase1_margin = 0.0;
  std::vector<BlockInfo> blocks;
  // Candidate moment values (slot name, value) when the relaxation is
  // feasible; they witness degree-d consistency, not a measure.
  std::vector<std::pair<std::string, double>> moments;
  std::string note;  // set when validation alone certified the arbitrage
  SolverDiagnostics diagnostics;
};

struct BoundResult {
  std::string target_name;
  BoundDirection direction = BoundDirection::Upper;
  double value = 0.0;
  int degree = 0;
  double beta = 0.0;
  std::vector<BlockInfo> blocks;
  SolverDiagnostics diagnostics;
};

class InfeasibleMarketError : public std::runtime_error {
 public:
  explicit InfeasibleMarketError(ArbitrageReport report);
  const ArbitrageReport& report() const { return report_; }

 private:
  ArbitrageReport report_;
};

struct EngineOptions {
  SolverOptions solver;
};

// Converts the LMI blocks into solver form; the objective is left zero.
ConicProblem to_conic(const MomentProblem& problem);

ArbitrageReport check_no_arbitrage(const MarketInstance& market,
                                   const EngineOptions& options = {});

// Price bounds for a target payoff added to the semigroup as an unpriced
// generator. The base market must pass the degree-d relaxation; otherwise an
// InfeasibleMarketError carrying the report is thrown.
BoundResult price_bounds(const MarketInstance& market, const PayoffGenerator& target,
                         BoundDirection direction, const EngineOptions& options = {});

// Bounds across a list of increasing degrees; throws if the hierarchy is
// non-monotone beyond tolerance (upper bounds must not increase, lower
// bounds must not decrease).
std::vector<BoundResult> bound_vs_degree(const MarketInstance& market,
                                         const PayoffGenerator& target,
                                         BoundDirection direction,
                                         const std::vector<int>& degrees,
                                         const EngineOptions& options = {});

}  // namespace statearb
