#include "statearb/moment_assembler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace statearb {

double AffineExpr::value_at(const Eigen::VectorXd& y) const {
  double v = constant;
  for (const auto& [slot, coeff] : terms) v += coeff * y[slot];
  return v;
}

void AffineExpr::add_term(int slot, double coeff) {
  auto it = std::lower_bound(terms.begin(), terms.end(), slot,
                             [](const auto& t, int s) { return t.first < s; });
  if (it != terms.end() && it->first == slot) {
    it->second += coeff;
  } else {
    terms.insert(it, {slot, coeff});
  }
}

AffineExpr& AffineExpr::axpy(double scale, const AffineExpr& other) {
  constant += scale * other.constant;
  for (const auto& [slot, coeff] : other.terms) add_term(slot, scale * coeff);
  return *this;
}

namespace {

std::vector<int> encode_key(const Eigen::VectorXi& monomial,
                            const std::vector<int>& residual, int total_gens) {
  std::vector<int> key(total_gens, 0);
  for (int i = 0; i < monomial.size(); ++i) key[i] = monomial[i];
  for (int id : residual) key[id] = 1;
  return key;
}

}  // namespace

MomentIndex::MomentIndex(GeneratorSet generators,
                         std::vector<std::optional<double>> prices,
                         int entry_degree)
    : generators_(std::move(generators)), entry_degree_(entry_degree) {
  if (entry_degree_ < 0 || entry_degree_ % 2 != 0) {
    throw std::invalid_argument("moment index: entry degree must be even and >= 0");
  }
  if (static_cast<int>(prices.size()) != generators_.size()) {
    throw std::invalid_argument("moment index: one price entry per generator required");
  }

  elements_ = enumerate_semigroup(generators_, entry_degree_);
  if (static_cast<int>(elements_.size()) > kMaxBasisElements) {
    throw std::invalid_argument(
        "moment index: " + std::to_string(elements_.size()) +
        " basis elements exceed the limit of " + std::to_string(kMaxBasisElements) +
        "; lower the degree or drop generators");
  }

  for (const SemigroupElement& e : elements_) {
    if (!e.expansion.is_fundamental()) continue;
    Entry entry;
    if (e.is_identity()) {
      entry.pinned = true;
      entry.value = 1.0;
    } else if (e.degree == 1) {
      // Degree-one fundamentals are exactly the generators.
      int gen_id = -1;
      for (int i = 0; i < generators_.size(); ++i) {
        if (e.exponents[i] == 1) gen_id = i;
      }
      if (prices[gen_id].has_value()) {
        entry.pinned = true;
        entry.value = *prices[gen_id];
      }
    }
    if (!entry.pinned) {
      entry.slot = num_slots_++;
      slot_elements_.push_back(e);
    }
    table_.emplace_back(
        encode_key(e.expansion.terms[0].first, e.expansion.residual, generators_.size()),
        entry);
  }
  std::sort(table_.begin(), table_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

const MomentIndex::Entry& MomentIndex::lookup(const Eigen::VectorXi& monomial,
                                              const std::vector<int>& residual) const {
  const std::vector<int> key = encode_key(monomial, residual, generators_.size());
  auto it = std::lower_bound(table_.begin(), table_.end(), key,
                             [](const auto& row, const std::vector<int>& k) {
                               return row.first < k;
                             });
  if (it == table_.end() || it->first != key) {
    throw std::logic_error("moment index: element outside the enumerated degree range");
  }
  return it->second;
}

std::vector<SemigroupElement> MomentIndex::fundamental_basis(int max_degree) const {
  std::vector<SemigroupElement> basis;
  for (const SemigroupElement& e : elements_) {
    if (e.degree <= max_degree && e.expansion.is_fundamental()) basis.push_back(e);
  }
  return basis;
}

AffineExpr MomentIndex::moment(const SemigroupElement& element) const {
  AffineExpr out;
  for (const auto& [mono, coeff] : element.expansion.terms) {
    const Entry& entry = lookup(mono, element.expansion.residual);
    if (entry.pinned) {
      out.constant += coeff * entry.value;
    } else {
      out.add_term(entry.slot, coeff);
    }
  }
  return out;
}

AffineExpr MomentIndex::moment_of_exponents(const Eigen::VectorXi& raw_exponents) const {
  return moment(canonicalize(raw_exponents, generators_));
}

std::string MomentIndex::slot_name(int slot) const {
  const SemigroupElement& e = slot_elements_.at(slot);
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < e.exponents.size(); ++i) {
    if (e.exponents[i] == 0) continue;
    if (!first) os << "*";
    os << generators_[i].name();
    if (e.exponents[i] > 1) os << "^" << e.exponents[i];
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

std::vector<std::string> MomentIndex::slot_names() const {
  std::vector<std::string> names;
  names.reserve(num_slots_);
  for (int s = 0; s < num_slots_; ++s) names.push_back(slot_name(s));
  return names;
}

Eigen::VectorXd MomentIndex::slot_values(
    const std::function<double(const SemigroupElement&)>& price_of) const {
  Eigen::VectorXd y(num_slots_);
  for (int s = 0; s < num_slots_; ++s) y[s] = price_of(slot_elements_[s]);
  return y;
}

Eigen::MatrixXd LmiBlock::value_at(const Eigen::VectorXd& y) const {
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = at(i, j).value_at(y);
  }
  return m;
}

BetaBound compute_beta(const GeneratorSet& generators,
                       const Eigen::VectorXd& support_max) {
  double beta = 0.0;
  for (const PayoffGenerator& g : generators.all()) beta += g.sup_on_box(support_max);
  return BetaBound{beta};
}

namespace {

LmiBlock build_weighted_block(const MomentIndex& index,
                              const std::vector<SemigroupElement>& basis,
                              const Eigen::VectorXi* weight, std::string label) {
  LmiBlock block;
  block.label = std::move(label);
  block.dim = static_cast<int>(basis.size());
  block.cells.resize(basis.size() * basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      Eigen::VectorXi raw = basis[i].exponents + basis[j].exponents;
      if (weight != nullptr) raw += *weight;
      AffineExpr cell = index.moment_of_exponents(raw);
      block.cells[i * basis.size() + j] = cell;
      block.cells[j * basis.size() + i] = std::move(cell);
    }
  }
  return block;
}

}  // namespace

LmiBlock build_moment_matrix(const MomentIndex& index, int d) {
  if (2 * d > index.entry_degree()) {
    throw std::logic_error("moment matrix: basis degree exceeds the enumerated range");
  }
  return build_weighted_block(index, index.fundamental_basis(d), nullptr, "moment");
}

LmiBlock build_localizing_matrix(const MomentIndex& index, int generator_id, int d) {
  if (generator_id < 0 || generator_id >= index.generators().size()) {
    throw std::invalid_argument("localizing matrix: bad generator id");
  }
  Eigen::VectorXi weight = Eigen::VectorXi::Zero(index.generators().size());
  weight[generator_id] = 1;
  const auto basis = index.fundamental_basis(std::max(d - 1, 0));
  return build_weighted_block(index, basis, &weight,
                              "localizing:" + index.generators()[generator_id].name());
}

LmiBlock build_beta_matrix(const MomentIndex& index, double beta, int d) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("beta matrix: beta must be positive");
  }
  const auto basis = index.fundamental_basis(std::max(d - 1, 0));
  const int ng = index.generators().size();

  LmiBlock block;
  block.label = "support";
  block.dim = static_cast<int>(basis.size());
  block.cells.resize(basis.size() * basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const Eigen::VectorXi raw = basis[i].exponents + basis[j].exponents;
      AffineExpr cell;
      cell.axpy(beta, index.moment_of_exponents(raw));
      for (int g = 0; g < ng; ++g) {
        Eigen::VectorXi weighted = raw;
        weighted[g] += 1;
        cell.axpy(-1.0, index.moment_of_exponents(weighted));
      }
      block.cells[i * basis.size() + j] = cell;
      block.cells[j * basis.size() + i] = std::move(cell);
    }
  }
  return block;
}

namespace {

MomentProblem assemble_impl(const GeneratorSet& gens,
                            std::vector<std::optional<double>> prices,
                            const Eigen::VectorXd& support_max, int d) {
  if (d < 1) throw std::invalid_argument("assemble: relaxation degree must be >= 1");
  if (gens.num_assets() == 0) throw std::invalid_argument("assemble: market has no assets");

  MomentProblem problem{MomentIndex(gens, std::move(prices), 2 * d),
                        compute_beta(gens, support_max),
                        {}};
  problem.blocks.push_back(build_moment_matrix(problem.index, d));
  for (int g = 0; g < gens.size(); ++g) {
    problem.blocks.push_back(build_localizing_matrix(problem.index, g, d));
  }
  problem.blocks.push_back(build_beta_matrix(problem.index, problem.beta.value, d));
  return problem;
}

}  // namespace

MomentProblem assemble(const MarketInstance& market, int d) {
  return assemble_impl(market.generators(), market.generator_prices(),
                       market.support_max, d);
}

MomentProblem assemble_with_target(const MarketInstance& market,
                                   const PayoffGenerator& target, int d) {
  GeneratorSet gens = market.generators();
  std::vector<std::optional<double>> prices = market.generator_prices();
  bool duplicate = false;
  for (int i = 0; i < gens.size(); ++i) {
    if (gens[i].same_payoff(target)) {
      duplicate = true;
      break;
    }
  }
  if (!duplicate) {
    gens = gens.with_appended(target);
    prices.emplace_back(std::nullopt);
  }
  return assemble_impl(gens, std::move(prices), market.support_max, d);
}

}  // namespace statearb
