#include "statearb/market_json.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "statearb/version.hpp"

namespace statearb {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& pointer,
                  const std::set<std::string>& required,
                  const std::set<std::string>& optional) {
  if (!obj.is_object()) throw SchemaError(pointer, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (required.count(key) || optional.count(key)) continue;
    if (key == "discount" || key == "interest_rate" || key == "rate") {
      throw SchemaError(pointer + "/" + key,
                        "prices are forward prices; discounting fields are not accepted");
    }
    throw SchemaError(pointer + "/" + key, "unknown key");
  }
  for (const auto& key : required) {
    if (!obj.contains(key)) throw SchemaError(pointer, "missing required key '" + key + "'");
  }
}

double number_at(const json& obj, const std::string& pointer, const std::string& key) {
  const json& v = obj.at(key);
  if (!v.is_number()) throw SchemaError(pointer + "/" + key, "expected a number");
  return v.get<double>();
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string lincomb_name(const Eigen::VectorXd& coeffs,
                         const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0.0) continue;
    if (coeffs[i] < 0.0) {
      os << "-";
    } else if (!first) {
      os << "+";
    }
    const double mag = std::abs(coeffs[i]);
    if (mag != 1.0) os << format_number(mag) << "*";
    os << names[i];
    first = false;
  }
  return os.str();
}

}  // namespace

double round_to_12_digits(double value) {
  if (!std::isfinite(value)) return value;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return std::strtod(buf, nullptr);
}

std::string fnv1a_digest(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

ParsedMarket parse_market_json(const json& doc) {
  require_keys(doc, "", {"assets"}, {"derivatives", "degree"});

  ParsedMarket out;
  MarketInstance& market = out.market;

  const json& assets = doc.at("assets");
  if (!assets.is_array() || assets.empty()) {
    throw SchemaError("/assets", "expected a nonempty array");
  }
  const int n = static_cast<int>(assets.size());
  market.asset_prices.resize(n);
  market.support_max.resize(n);
  for (int i = 0; i < n; ++i) {
    const std::string pointer = "/assets/" + std::to_string(i);
    require_keys(assets[i], pointer, {"name", "price", "support_max"}, {});
    const json& name = assets[i].at("name");
    if (!name.is_string() || name.get<std::string>().empty()) {
      throw SchemaError(pointer + "/name", "expected a nonempty string");
    }
    for (const auto& existing : market.asset_names) {
      if (existing == name.get<std::string>()) {
        throw SchemaError(pointer + "/name", "duplicate asset name");
      }
    }
    market.asset_names.push_back(name.get<std::string>());
    market.asset_prices[i] = number_at(assets[i], pointer, "price");
    market.support_max[i] = number_at(assets[i], pointer, "support_max");
  }

  const auto asset_id = [&](const std::string& pointer, const std::string& name) {
    for (int i = 0; i < n; ++i) {
      if (market.asset_names[i] == name) return i;
    }
    throw SchemaError(pointer, "unknown asset '" + name + "'");
  };

  if (doc.contains("derivatives")) {
    const json& derivs = doc.at("derivatives");
    if (!derivs.is_array()) throw SchemaError("/derivatives", "expected an array");
    for (std::size_t j = 0; j < derivs.size(); ++j) {
      const std::string pointer = "/derivatives/" + std::to_string(j);
      const json& d = derivs[j];
      require_keys(d, pointer, {"type", "strike", "price"},
                   {"asset", "coefficients", "name"});
      const std::string type = d.at("type").is_string() ? d.at("type").get<std::string>() : "";
      if (type != "call" && type != "straddle" && type != "abs_linear") {
        throw SchemaError(pointer + "/type", "expected call, straddle or abs_linear");
      }

      Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(n);
      if (d.contains("asset") == d.contains("coefficients")) {
        throw SchemaError(pointer, "give exactly one of 'asset' or 'coefficients'");
      }
      if (d.contains("asset")) {
        if (!d.at("asset").is_string()) throw SchemaError(pointer + "/asset", "expected a string");
        coeffs[asset_id(pointer + "/asset", d.at("asset").get<std::string>())] = 1.0;
      } else {
        const json& cs = d.at("coefficients");
        if (!cs.is_object() || cs.empty()) {
          throw SchemaError(pointer + "/coefficients", "expected a nonempty object");
        }
        for (const auto& [name, value] : cs.items()) {
          if (!value.is_number()) {
            throw SchemaError(pointer + "/coefficients/" + name, "expected a number");
          }
          coeffs[asset_id(pointer + "/coefficients/" + name, name)] = value.get<double>();
        }
      }
      if (coeffs.isZero(0.0)) {
        throw SchemaError(pointer + "/coefficients", "all coefficients are zero");
      }

      const double strike = number_at(d, pointer, "strike");
      const double price = number_at(d, pointer, "price");

      DerivativeQuote quote;
      std::string name = d.contains("name") && d.at("name").is_string()
                             ? d.at("name").get<std::string>()
                             : "";
      if (name.empty()) {
        name = "straddle(" + lincomb_name(coeffs, market.asset_names) + "," +
               format_number(strike) + ")";
      }
      quote.payoff = PayoffGenerator::abs_linear(coeffs, strike, name);
      if (type == "call") {
        const double forward = coeffs.dot(market.asset_prices);
        quote.price = straddle_price_from_call(forward, strike, price);
        quote.converted_from_call = true;
        quote.original_call_price = price;
        out.conversions.push_back(
            "call at strike " + format_number(strike) + " priced " + format_number(price) +
            " converted to straddle price " + format_number(quote.price) +
            " using forward " + format_number(forward));
      } else {
        quote.price = price;
      }
      market.derivatives.push_back(std::move(quote));
    }
  }

  if (doc.contains("degree")) {
    const json& deg = doc.at("degree");
    if (!deg.is_number_integer() || deg.get<int>() < 1) {
      throw SchemaError("/degree", "expected an integer >= 1");
    }
    market.degree = deg.get<int>();
  }
  return out;
}

ParsedMarket load_market_file(const std::string& path, std::string* digest) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read market file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string bytes = buffer.str();
  if (digest != nullptr) *digest = fnv1a_digest(bytes);
  json doc;
  try {
    doc = json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
  return parse_market_json(doc);
}

json market_to_json(const MarketInstance& market) {
  json doc;
  doc["assets"] = json::array();
  for (int i = 0; i < market.num_assets(); ++i) {
    doc["assets"].push_back({{"name", market.asset_names[i]},
                             {"price", round_to_12_digits(market.asset_prices[i])},
                             {"support_max", round_to_12_digits(market.support_max[i])}});
  }
  doc["derivatives"] = json::array();
  for (const DerivativeQuote& d : market.derivatives) {
    json entry;
    entry["type"] = "abs_linear";
    json coeffs = json::object();
    for (int i = 0; i < market.num_assets(); ++i) {
      if (d.payoff.coefficients()[i] != 0.0) {
        coeffs[market.asset_names[i]] = round_to_12_digits(d.payoff.coefficients()[i]);
      }
    }
    entry["coefficients"] = coeffs;
    entry["strike"] = round_to_12_digits(d.payoff.offset());
    entry["price"] = round_to_12_digits(d.price);
    entry["name"] = d.payoff.name();
    doc["derivatives"].push_back(entry);
  }
  doc["degree"] = market.degree;
  return doc;
}

TargetSpec parse_target_spec(const std::string& text, const MarketInstance& market) {
  const auto fail = [&text](const std::string& why) -> TargetSpec {
    throw std::runtime_error("bad target '" + text + "': " + why);
  };

  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) fail("empty spec");

  TargetSpec spec;
  spec.text = text;

  const auto paren = s.find('(');
  if (paren == std::string::npos) {
    for (int i = 0; i < market.num_assets(); ++i) {
      if (market.asset_names[i] == s) {
        spec.payoff = PayoffGenerator::asset(i, s);
        return spec;
      }
    }
    fail("not an asset name; use call(...), straddle(...) or abs(...)");
  }

  const std::string kind = s.substr(0, paren);
  if (kind != "call" && kind != "straddle" && kind != "abs") {
    fail("unknown payoff kind '" + kind + "'");
  }
  if (s.back() != ')') fail("missing closing parenthesis");
  const std::string inner = s.substr(paren + 1, s.size() - paren - 2);
  const auto comma = inner.rfind(',');
  if (comma == std::string::npos) fail("expected kind(lincomb, strike)");
  const std::string comb = inner.substr(0, comma);
  const std::string strike_text = inner.substr(comma + 1);

  char* end = nullptr;
  spec.strike = std::strtod(strike_text.c_str(), &end);
  if (end == strike_text.c_str() || *end != '\0') fail("bad strike '" + strike_text + "'");

  Eigen::VectorXd coeffs = Eigen::VectorXd::Zero(market.num_assets());
  std::size_t pos = 0;
  while (pos < comb.size()) {
    double sign = 1.0;
    while (pos < comb.size() && (comb[pos] == '+' || comb[pos] == '-')) {
      if (comb[pos] == '-') sign = -sign;
      ++pos;
    }
    if (pos >= comb.size()) fail("dangling sign in '" + comb + "'");
    double scale = 1.0;
    if (std::isdigit(static_cast<unsigned char>(comb[pos])) || comb[pos] == '.') {
      const char* start = comb.c_str() + pos;
      scale = std::strtod(start, &end);
      pos += end - start;
      if (pos < comb.size() && comb[pos] == '*') ++pos;
    }
    std::size_t name_end = pos;
    while (name_end < comb.size() && comb[name_end] != '+' && comb[name_end] != '-') {
      ++name_end;
    }
    const std::string name = comb.substr(pos, name_end - pos);
    if (name.empty()) fail("missing asset name in '" + comb + "'");
    int id = -1;
    for (int i = 0; i < market.num_assets(); ++i) {
      if (market.asset_names[i] == name) id = i;
    }
    if (id < 0) fail("unknown asset '" + name + "'");
    coeffs[id] += sign * scale;
    pos = name_end;
  }
  if (coeffs.isZero(0.0)) fail("coefficients cancel to zero");

  spec.from_call = kind == "call";
  const std::string name =
      (spec.from_call ? "call->straddle(" : "straddle(") +
      lincomb_name(coeffs, market.asset_names) + "," + format_number(spec.strike) + ")";
  spec.payoff = PayoffGenerator::abs_linear(coeffs, spec.strike, name);
  return spec;
}

DiscreteMeasure load_measure_file(const std::string& path, std::string* digest) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read measure file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (digest != nullptr) *digest = fnv1a_digest(buffer.str());
  json doc;
  try {
    doc = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }
  require_keys(doc, "", {"points", "weights"}, {});
  const json& pts = doc.at("points");
  const json& wts = doc.at("weights");
  if (!pts.is_array() || pts.empty()) throw SchemaError("/points", "expected a nonempty array");
  if (!wts.is_array() || wts.size() != pts.size()) {
    throw SchemaError("/weights", "expected an array matching /points in length");
  }
  DiscreteMeasure measure;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const json& p = pts[i];
    Eigen::VectorXd x;
    if (p.is_number()) {
      x.resize(1);
      x[0] = p.get<double>();
    } else if (p.is_array() && !p.empty()) {
      x.resize(static_cast<Eigen::Index>(p.size()));
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (!p[k].is_number()) {
          throw SchemaError("/points/" + std::to_string(i), "expected numbers");
        }
        x[static_cast<Eigen::Index>(k)] = p[k].get<double>();
      }
    } else {
      throw SchemaError("/points/" + std::to_string(i), "expected a number or an array");
    }
    measure.points.push_back(std::move(x));
  }
  measure.weights.resize(static_cast<Eigen::Index>(wts.size()));
  for (std::size_t i = 0; i < wts.size(); ++i) {
    if (!wts[i].is_number()) throw SchemaError("/weights/" + std::to_string(i), "expected a number");
    measure.weights[static_cast<Eigen::Index>(i)] = wts[i].get<double>();
  }
  measure.validate();
  return measure;
}

namespace {

json tool_json() {
  return {{"name", std::string(kToolName)}, {"version", std::string(kToolVersion)}};
}

json solver_json(const SolverDiagnostics& d) {
  json out;
  out["status"] = to_string(d.status);
  out["iterations"] = d.iterations;
  out["primal_residual"] = round_to_12_digits(d.primal_residual);
  out["dual_residual"] = round_to_12_digits(d.dual_residual);
  out["duality_gap"] = round_to_12_digits(d.duality_gap);
  if (!d.message.empty()) out["message"] = d.message;
  return out;
}

json blocks_json(const std::vector<BlockInfo>& blocks) {
  json arr = json::array();
  for (const BlockInfo& b : blocks) arr.push_back({{"label", b.label}, {"dim", b.dim}});
  return arr;
}

void attach_common(json& doc, const MarketInstance& market,
                   const std::vector<std::string>& conversions,
                   const std::string& digest) {
  doc["market"] = market_to_json(market);
  if (!conversions.empty()) doc["conversions"] = conversions;
  doc["tool"] = tool_json();
  doc["input_digest"] = digest;
}

}  // namespace

json check_report_json(const MarketInstance& market,
                       const std::vector<std::string>& conversions,
                       const ArbitrageReport& report, const std::string& digest) {
  json doc;
  doc["command"] = "check";
  doc["verdict"] = to_string(report.verdict);
  doc["degree"] = report.degree;
  if (report.verdict == Verdict::RelaxationFeasible) {
    doc["interpretation"] =
        "prices pass every degree-" + std::to_string(report.degree) +
        " necessary condition; a higher degree may still certify an arbitrage";
  }
  if (!report.note.empty()) {
    doc["validation_note"] = report.note;
  } else {
    doc["beta"] = round_to_12_digits(report.beta);
    doc["phase1_margin"] = round_to_12_digits(report.phase1_margin);
    doc["blocks"] = blocks_json(report.blocks);
    doc["solver"] = solver_json(report.diagnostics);
    if (!report.moments.empty()) {
      json moments = json::array();
      for (const auto& [name, value] : report.moments) {
        moments.push_back({{"element", name}, {"value", round_to_12_digits(value)}});
      }
      doc["moments"] = moments;
    }
  }
  attach_common(doc, market, conversions, digest);
  return doc;
}

json bound_report_json(const MarketInstance& market,
                       const std::vector<std::string>& conversions,
                       const TargetSpec& target, const BoundResult& result,
                       const std::string& digest) {
  json doc;
  doc["command"] = "bound";
  doc["target"] = target.text;
  doc["direction"] = result.direction == BoundDirection::Upper ? "upper" : "lower";
  doc["degree"] = result.degree;
  doc["bound"] = round_to_12_digits(result.value);
  if (target.from_call) {
    const double forward = market.forward_of(target.payoff);
    json call;
    call["strike"] = round_to_12_digits(target.strike);
    call["forward"] = round_to_12_digits(forward);
    call["bound"] =
        round_to_12_digits(call_price_from_straddle(forward, target.strike, result.value));
    call["conversion"] = "call = (straddle - strike + forward) / 2";
    doc["call_space"] = call;
  }
  doc["beta"] = round_to_12_digits(result.beta);
  doc["blocks"] = blocks_json(result.blocks);
  doc["solver"] = solver_json(result.diagnostics);
  attach_common(doc, market, conversions, digest);
  return doc;
}

json oracle_report_json(const MarketInstance& market,
                        const std::vector<std::string>& conversions,
                        const OracleResult& feasibility,
                        const std::optional<TargetSpec>& target,
                        const std::optional<BoundDirection>& direction,
                        const std::optional<double>& bound,
                        const std::string& digest) {
  json doc;
  doc["command"] = "oracle";
  doc["feasible"] = feasibility.feasible;
  doc["max_violation"] = round_to_12_digits(feasibility.max_violation);
  json grid;
  json sizes = json::array();
  for (int i = 0; i < feasibility.grid.dim(); ++i) {
    sizes.push_back(static_cast<int>(feasibility.grid.axis(i).size()));
  }
  grid["axis_sizes"] = sizes;
  grid["total_points"] = feasibility.grid.total_points();
  doc["grid"] = grid;
  if (feasibility.feasible) {
    json witness;
    json points = json::array();
    for (const auto& p : feasibility.witness.points) {
      json coords = json::array();
      for (int k = 0; k < p.size(); ++k) coords.push_back(round_to_12_digits(p[k]));
      points.push_back(coords);
    }
    json weights = json::array();
    for (int i = 0; i < feasibility.witness.weights.size(); ++i) {
      weights.push_back(round_to_12_digits(feasibility.witness.weights[i]));
    }
    witness["points"] = points;
    witness["weights"] = weights;
    doc["witness"] = witness;
  }
  if (target.has_value() && bound.has_value()) {
    json b;
    b["target"] = target->text;
    b["direction"] = *direction == BoundDirection::Upper ? "upper" : "lower";
    b["value"] = round_to_12_digits(*bound);
    if (target->from_call) {
      const double forward = market.forward_of(target->payoff);
      b["call_space_value"] = round_to_12_digits(
          call_price_from_straddle(forward, target->strike, *bound));
    }
    doc["bound"] = b;
  }
  attach_common(doc, market, conversions, digest);
  return doc;
}

json martingale_report_json(const TransitionResult& transition,
                            const std::optional<ConvexOrderReport>& convex_order,
                            const std::string& digest) {
  json doc;
  doc["command"] = "martingale";
  doc["feasible"] = transition.feasible;
  doc["mismatch"] = round_to_12_digits(transition.mismatch);
  if (transition.feasible) {
    json rows = json::array();
    for (int i = 0; i < transition.transition.rows.rows(); ++i) {
      json row = json::array();
      for (int j = 0; j < transition.transition.rows.cols(); ++j) {
        row.push_back(round_to_12_digits(transition.transition.rows(i, j)));
      }
      rows.push_back(row);
    }
    doc["transition"] = rows;
  }
  if (convex_order.has_value()) {
    json cx;
    cx["means_match"] = convex_order->means_match;
    cx["mean_gap"] = round_to_12_digits(convex_order->mean_gap);
    cx["min_margin"] = round_to_12_digits(convex_order->min_margin);
    cx["consistent"] = convex_order->consistent;
    doc["convex_order"] = cx;
    doc["agreement"] = transition.feasible == convex_order->consistent;
  }
  doc["tool"] = tool_json();
  doc["input_digest"] = digest;
  return doc;
}

}  // namespace statearb
