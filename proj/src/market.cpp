#include "statearb/market.hpp"

#include <cmath>
#include <sstream>

namespace statearb {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::ostringstream os;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) os << "; ";
    os << parts[i];
  }
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : std::runtime_error("invalid market: " + join(violations)),
      violations_(std::move(violations)) {}

GeneratorSet MarketInstance::generators() const {
  std::vector<PayoffGenerator> gens;
  gens.reserve(num_assets() + num_derivatives());
  for (int i = 0; i < num_assets(); ++i) {
    gens.push_back(PayoffGenerator::asset(i, asset_names[i]));
  }
  for (const DerivativeQuote& d : derivatives) gens.push_back(d.payoff);
  return GeneratorSet(num_assets(), std::move(gens));
}

std::vector<std::optional<double>> MarketInstance::generator_prices() const {
  std::vector<std::optional<double>> prices;
  prices.reserve(num_assets() + num_derivatives());
  for (int i = 0; i < num_assets(); ++i) prices.emplace_back(asset_prices[i]);
  for (const DerivativeQuote& d : derivatives) prices.emplace_back(d.price);
  return prices;
}

double MarketInstance::forward_of(const PayoffGenerator& payoff) const {
  if (payoff.kind() == PayoffGenerator::Kind::Asset) {
    return asset_prices[payoff.asset_index()];
  }
  return payoff.coefficients().dot(asset_prices);
}

void MarketInstance::validate() const {
  std::vector<std::string> bad;
  const int n = num_assets();
  if (n == 0) bad.push_back("market has no assets");
  if (asset_prices.size() != n || support_max.size() != n) {
    bad.push_back("asset name/price/support arrays disagree in length");
  }
  if (degree < 1) bad.push_back("relaxation degree must be >= 1");
  if (asset_prices.size() == n && !asset_prices.allFinite()) {
    bad.push_back("asset prices must be finite");
  }
  for (int i = 0; i < n && support_max.size() == n; ++i) {
    if (!std::isfinite(support_max[i]) || support_max[i] <= 0.0) {
      bad.push_back("support_max for " + asset_names[i] + " must be positive and finite");
    }
  }
  for (std::size_t j = 0; j < derivatives.size(); ++j) {
    const DerivativeQuote& d = derivatives[j];
    const std::string label = d.payoff.name().empty()
                                  ? "derivative " + std::to_string(j + 1)
                                  : d.payoff.name();
    if (d.payoff.kind() != PayoffGenerator::Kind::AbsLinear) {
      bad.push_back(label + ": derivative payoffs must be abs-linear");
      continue;
    }
    if (!std::isfinite(d.price)) bad.push_back(label + ": price must be finite");
    if (d.payoff.coefficients().size() != n) {
      bad.push_back(label + ": coefficient length must equal the asset count");
      continue;
    }
    if (support_max.size() == n && support_max.allFinite()) {
      // The kink a.x = K must cross the support box; otherwise the payoff is
      // affine on the support and the quote is mislabeled.
      double hi = 0.0, lo = 0.0;
      for (int i = 0; i < n; ++i) {
        hi += std::max(d.payoff.coefficients()[i], 0.0) * support_max[i];
        lo += std::min(d.payoff.coefficients()[i], 0.0) * support_max[i];
      }
      if (d.payoff.offset() < lo - 1e-12 || d.payoff.offset() > hi + 1e-12) {
        bad.push_back(label + ": strike lies outside the payoff range on the support box");
      }
    }
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

std::vector<std::string> MarketInstance::trivial_arbitrage() const {
  std::vector<std::string> notes;
  for (int i = 0; i < num_assets(); ++i) {
    if (asset_prices[i] < 0.0) {
      notes.push_back("asset " + asset_names[i] +
                      " has a negative price; buying it costs less than its worst payoff");
    } else if (asset_prices[i] > support_max[i]) {
      notes.push_back("asset " + asset_names[i] +
                      " is priced above its largest possible payoff " +
                      std::to_string(support_max[i]) + "; selling it is an arbitrage");
    }
  }
  for (const DerivativeQuote& d : derivatives) {
    if (d.price < 0.0) {
      notes.push_back(d.payoff.name() + " has a negative price; its payoff is nonnegative");
    }
  }
  return notes;
}

MarketInstance MarketInstance::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw std::invalid_argument("scale factor must be positive");
  MarketInstance m = *this;
  m.asset_prices *= lambda;
  m.support_max *= lambda;
  for (DerivativeQuote& d : m.derivatives) {
    d.price *= lambda;
    if (d.payoff.kind() == PayoffGenerator::Kind::AbsLinear) {
      d.payoff = PayoffGenerator::abs_linear(d.payoff.coefficients(),
                                             d.payoff.offset() * lambda,
                                             d.payoff.name());
    }
    if (d.converted_from_call) d.original_call_price *= lambda;
  }
  return m;
}

}  // namespace statearb
