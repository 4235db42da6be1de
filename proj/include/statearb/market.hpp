#pragma once

// A one-period market: forward prices for n assets supported on [0, B_i],
// plus quoted derivative payoffs. Interest rates are zero by convention;
// all prices are forward prices.

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "statearb/payoff_algebra.hpp"

namespace statearb {

enum class BoundDirection { Upper, Lower };

struct DerivativeQuote {
  PayoffGenerator payoff;  // AbsLinear; calls are converted on ingestion
  double price = 0.0;
  bool converted_from_call = false;
  double original_call_price = 0.0;  // meaningful when converted_from_call
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct MarketInstance {
  std::vector<std::string> asset_names;
  Eigen::VectorXd asset_prices;
  Eigen::VectorXd support_max;  // per-asset upper bound B_i, lower bound is 0
  std::vector<DerivativeQuote> derivatives;
  int degree = 2;

  int num_assets() const { return static_cast<int>(asset_names.size()); }
  int num_derivatives() const { return static_cast<int>(derivatives.size()); }

  GeneratorSet generators() const;
  // nullopt marks an unpriced generator slot.
  std::vector<std::optional<double>> generator_prices() const;
  // Forward price of the linear combination a.x underlying a payoff.
  double forward_of(const PayoffGenerator& payoff) const;

  // Structural violations (non-finite data, bad strikes, d < 1, ...).
  // Throws ValidationError when any are found.
  void validate() const;
  // Price/support violations that already certify an arbitrage, e.g. an
  // asset priced above its largest payoff. Empty when none.
  std::vector<std::string> trivial_arbitrage() const;

  MarketInstance scaled(double lambda) const;
};

}  // namespace statearb
