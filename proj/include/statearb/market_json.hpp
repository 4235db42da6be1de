#pragma once

// Market-file parsing and report serialization for the command-line front
// end. The schema is strict: unknown keys are rejected with their JSON
// pointer, calls are converted to straddles on load (recorded in reports),
// and numbers are emitted with 12 significant digits.

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "statearb/arbitrage_engine.hpp"
#include "statearb/discrete_measure.hpp"
#include "statearb/grid_oracle.hpp"
#include "statearb/market.hpp"
#include "statearb/martingale_check.hpp"

namespace statearb {

class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& pointer, const std::string& what)
      : std::runtime_error(pointer + ": " + what) {}
};

struct ParsedMarket {
  MarketInstance market;
  std::vector<std::string> conversions;  // call -> straddle records
};

ParsedMarket parse_market_json(const nlohmann::json& doc);
ParsedMarket load_market_file(const std::string& path, std::string* digest = nullptr);
nlohmann::json market_to_json(const MarketInstance& market);

// Target payoff specs: an asset name, or kind(lincomb, strike) with kind one
// of call | straddle | abs, e.g. "call(x1, 0.4)" or "straddle(x1-x2, 0)".
struct TargetSpec {
  PayoffGenerator payoff;   // straddle payoff used for the optimization
  bool from_call = false;   // report the bound in call space as well
  double strike = 0.0;
  std::string text;
};

TargetSpec parse_target_spec(const std::string& text, const MarketInstance& market);

DiscreteMeasure load_measure_file(const std::string& path, std::string* digest = nullptr);

// 12-significant-digit rounding applied to every number in reports.
double round_to_12_digits(double value);
std::string fnv1a_digest(const std::string& bytes);

nlohmann::json check_report_json(const MarketInstance& market,
                                 const std::vector<std::string>& conversions,
                                 const ArbitrageReport& report,
                                 const std::string& digest);
nlohmann::json bound_report_json(const MarketInstance& market,
                                 const std::vector<std::string>& conversions,
                                 const TargetSpec& target, const BoundResult& result,
                                 const std::string& digest);
nlohmann::json oracle_report_json(const MarketInstance& market,
                                  const std::vector<std::string>& conversions,
                                  const OracleResult& feasibility,
                                  const std::optional<TargetSpec>& target,
                                  const std::optional<BoundDirection>& direction,
                                  const std::optional<double>& bound,
                                  const std::string& digest);
nlohmann::json martingale_report_json(const TransitionResult& transition,
                                      const std::optional<ConvexOrderReport>& convex_order,
                                      const std::string& digest);

}  // namespace statearb
