#include "statearb/payoff_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

namespace statearb {

namespace {

// Lexicographic compare, larger vector first within equal degree.
bool graded_lex_before(const Eigen::VectorXi& a, const Eigen::VectorXi& b) {
  const int da = a.sum();
  const int db = b.sum();
  if (da != db) return da < db;
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

struct MonomialLess {
  bool operator()(const Eigen::VectorXi& a, const Eigen::VectorXi& b) const {
    return graded_lex_before(a, b);
  }
};

using Polynomial = std::map<Eigen::VectorXi, double, MonomialLess>;

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
  Polynomial out;
  for (const auto& [ma, ca] : p) {
    for (const auto& [mb, cb] : q) {
      const Eigen::VectorXi m = ma + mb;
      out[m] += ca * cb;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = std::abs(it->second) < 1e-300 ? out.erase(it) : std::next(it);
  }
  return out;
}

// a.x - K as a polynomial over the assets.
Polynomial affine_poly(const PayoffGenerator& gen, int n) {
  Polynomial p;
  for (int i = 0; i < n; ++i) {
    if (gen.coefficients()[i] != 0.0) {
      Eigen::VectorXi m = Eigen::VectorXi::Zero(n);
      m[i] = 1;
      p[m] = gen.coefficients()[i];
    }
  }
  if (gen.offset() != 0.0) {
    p[Eigen::VectorXi::Zero(n)] += -gen.offset();
  }
  return p;
}

}  // namespace

PayoffGenerator PayoffGenerator::asset(int index, std::string name) {
  if (index < 0) throw std::invalid_argument("asset index must be nonnegative");
  PayoffGenerator g;
  g.kind_ = Kind::Asset;
  g.asset_index_ = index;
  g.name_ = std::move(name);
  return g;
}

PayoffGenerator PayoffGenerator::abs_linear(Eigen::VectorXd coefficients,
                                            double offset, std::string name) {
  if (coefficients.size() == 0 || coefficients.isZero(0.0)) {
    throw std::invalid_argument("abs-linear payoff needs a nonzero coefficient vector");
  }
  if (!coefficients.allFinite() || !std::isfinite(offset)) {
    throw std::invalid_argument("abs-linear payoff parameters must be finite");
  }
  PayoffGenerator g;
  g.kind_ = Kind::AbsLinear;
  g.coefficients_ = std::move(coefficients);
  g.offset_ = offset;
  g.name_ = std::move(name);
  return g;
}

double PayoffGenerator::value_at(const Eigen::VectorXd& x) const {
  if (kind_ == Kind::Asset) return x[asset_index_];
  return std::abs(coefficients_.dot(x) - offset_);
}

double PayoffGenerator::sup_on_box(const Eigen::VectorXd& upper) const {
  if (kind_ == Kind::Asset) return upper[asset_index_];
  double hi = 0.0;
  double lo = 0.0;
  for (int i = 0; i < coefficients_.size(); ++i) {
    hi += std::max(coefficients_[i], 0.0) * upper[i];
    lo += std::min(coefficients_[i], 0.0) * upper[i];
  }
  return std::max(hi - offset_, offset_ - lo);
}

bool PayoffGenerator::same_payoff(const PayoffGenerator& other, double tol) const {
  if (kind_ != other.kind_) return false;
  if (kind_ == Kind::Asset) return asset_index_ == other.asset_index_;
  if (coefficients_.size() != other.coefficients_.size()) return false;
  return (coefficients_ - other.coefficients_).cwiseAbs().maxCoeff() <= tol &&
         std::abs(offset_ - other.offset_) <= tol;
}

GeneratorSet::GeneratorSet(int num_assets, std::vector<PayoffGenerator> generators)
    : num_assets_(num_assets), generators_(std::move(generators)) {
  if (num_assets_ < 0 || num_assets_ > static_cast<int>(generators_.size())) {
    throw std::invalid_argument("generator set: bad asset count");
  }
  for (int i = 0; i < num_assets_; ++i) {
    if (generators_[i].kind() != PayoffGenerator::Kind::Asset ||
        generators_[i].asset_index() != i) {
      throw std::invalid_argument("generator set: assets must come first, in index order");
    }
  }
  for (int i = num_assets_; i < size(); ++i) {
    if (generators_[i].kind() != PayoffGenerator::Kind::AbsLinear) {
      throw std::invalid_argument("generator set: derivatives must follow the assets");
    }
    if (generators_[i].coefficients().size() != num_assets_) {
      throw std::invalid_argument("generator set: coefficient length must equal asset count");
    }
  }
}

GeneratorSet GeneratorSet::with_appended(PayoffGenerator extra) const {
  std::vector<PayoffGenerator> gens = generators_;
  gens.push_back(std::move(extra));
  return GeneratorSet(num_assets_, std::move(gens));
}

double PolynomialExpansion::value_at(const GeneratorSet& generators,
                                     const Eigen::VectorXd& x) const {
  double poly = 0.0;
  for (const auto& [mono, coeff] : terms) {
    double term = coeff;
    for (int i = 0; i < mono.size(); ++i) {
      for (int e = 0; e < mono[i]; ++e) term *= x[i];
    }
    poly += term;
  }
  for (int id : residual) poly *= generators[id].value_at(x);
  return poly;
}

bool PolynomialExpansion::approx_equal(const PolynomialExpansion& other,
                                       double tol) const {
  if (residual != other.residual) return false;
  if (terms.size() != other.terms.size()) return false;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].first != other.terms[i].first) return false;
    const double a = terms[i].second;
    const double b = other.terms[i].second;
    if (std::abs(a - b) > tol * std::max({1.0, std::abs(a), std::abs(b)})) return false;
  }
  return true;
}

bool PolynomialExpansion::is_fundamental(double tol) const {
  return terms.size() == 1 && std::abs(terms[0].second - 1.0) <= tol;
}

int PolynomialExpansion::poly_degree() const {
  int d = 0;
  for (const auto& [mono, coeff] : terms) d = std::max(d, mono.sum());
  return d;
}

bool element_less(const SemigroupElement& a, const SemigroupElement& b) {
  if (a.degree != b.degree) return a.degree < b.degree;
  for (int i = 0; i < a.exponents.size(); ++i) {
    if (a.exponents[i] != b.exponents[i]) return a.exponents[i] > b.exponents[i];
  }
  // Same raw exponents can still carry different content (two derivatives can
  // reduce to different polynomials); order on the expansion.
  if (a.expansion.residual != b.expansion.residual) {
    return a.expansion.residual < b.expansion.residual;
  }
  const auto& ta = a.expansion.terms;
  const auto& tb = b.expansion.terms;
  if (ta.size() != tb.size()) return ta.size() < tb.size();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].first != tb[i].first) return graded_lex_before(tb[i].first, ta[i].first);
    if (ta[i].second != tb[i].second) return ta[i].second < tb[i].second;
  }
  return false;
}

SemigroupElement canonicalize(const Eigen::VectorXi& exponents,
                              const GeneratorSet& generators) {
  if (exponents.size() != generators.size()) {
    throw std::invalid_argument("canonicalize: exponent vector length mismatch");
  }
  if ((exponents.array() < 0).any()) {
    throw std::invalid_argument("canonicalize: exponents must be nonnegative");
  }
  const int n = generators.num_assets();

  Eigen::VectorXi alpha = Eigen::VectorXi::Zero(n);
  for (int i = 0; i < n; ++i) alpha[i] = exponents[i];

  Polynomial poly;
  poly[alpha] = 1.0;

  std::vector<int> residual;
  for (int i = n; i < generators.size(); ++i) {
    const int e = exponents[i];
    if (e % 2 == 1) residual.push_back(i);
    if (e >= 2) {
      const Polynomial lin = affine_poly(generators[i], n);
      const Polynomial sq = poly_mul(lin, lin);
      for (int q = 0; q < e / 2; ++q) poly = poly_mul(poly, sq);
    }
  }

  SemigroupElement elem;
  elem.exponents = exponents;
  elem.degree = exponents.sum();
  elem.expansion.residual = std::move(residual);
  elem.expansion.terms.assign(poly.rbegin(), poly.rend());  // leading term first
  return elem;
}

namespace {

void visit_compositions(int degree, int parts, Eigen::VectorXi& scratch, int pos,
                        const std::function<void(const Eigen::VectorXi&)>& fn) {
  if (pos == parts - 1) {
    scratch[pos] = degree;
    fn(scratch);
    return;
  }
  for (int first = degree; first >= 0; --first) {
    scratch[pos] = first;
    visit_compositions(degree - first, parts, scratch, pos + 1, fn);
  }
}

}  // namespace

std::vector<SemigroupElement> enumerate_semigroup(const GeneratorSet& generators,
                                                  int max_degree) {
  if (max_degree < 0 || max_degree % 2 != 0) {
    throw std::invalid_argument("enumerate_semigroup: max_degree must be even and >= 0");
  }
  if (generators.size() == 0) {
    throw std::invalid_argument("enumerate_semigroup: empty generator list");
  }

  std::vector<SemigroupElement> out;
  std::size_t degree_start = 0;  // dedup candidates share a degree
  Eigen::VectorXi scratch(generators.size());
  for (int deg = 0; deg <= max_degree; ++deg) {
    degree_start = out.size();
    visit_compositions(deg, generators.size(), scratch, 0,
                       [&](const Eigen::VectorXi& v) {
                         SemigroupElement e = canonicalize(v, generators);
                         for (std::size_t i = degree_start; i < out.size(); ++i) {
                           if (out[i].expansion.approx_equal(e.expansion)) return;
                         }
                         out.push_back(std::move(e));
                       });
  }
  return out;
}

double evaluate(const SemigroupElement& element, const GeneratorSet& generators,
                const Eigen::VectorXd& x) {
  if (x.size() != generators.num_assets()) {
    throw std::invalid_argument("evaluate: point dimension mismatch");
  }
  double v = 1.0;
  for (int i = 0; i < element.exponents.size(); ++i) {
    const int e = element.exponents[i];
    if (e == 0) continue;
    const double g = generators[i].value_at(x);
    for (int q = 0; q < e; ++q) v *= g;
  }
  return v;
}

std::uint64_t count_basis(int n_generators, int degree) {
  if (n_generators < 0 || degree < 0) {
    throw std::invalid_argument("count_basis: arguments must be nonnegative");
  }
  // C(n + d, d), kept integral at every step.
  std::uint64_t result = 1;
  const std::uint64_t n = static_cast<std::uint64_t>(n_generators);
  for (std::uint64_t i = 1; i <= static_cast<std::uint64_t>(degree); ++i) {
    const std::uint64_t factor = n + i;
    if (result > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw std::overflow_error("count_basis: binomial overflows 64 bits");
    }
    result = result * factor / i;
  }
  return result;
}

std::uint64_t count_basis_reduced(int n_assets, int n_abs, int d) {
  if (n_assets < 0 || n_abs < 0 || d < 0) {
    throw std::invalid_argument("count_basis_reduced: arguments must be nonnegative");
  }
  const std::uint64_t monomials = count_basis(n_assets, 2 * d);
  const std::uint64_t k1 = static_cast<std::uint64_t>(n_abs) + 1;
  if (monomials > std::numeric_limits<std::uint64_t>::max() / k1) {
    throw std::overflow_error("count_basis_reduced: overflows 64 bits");
  }
  return k1 * monomials;
}

double straddle_price_from_call(double forward, double strike, double call_price) {
  return (strike - forward) + 2.0 * call_price;
}

double call_price_from_straddle(double forward, double strike,
                                double straddle_price) {
  return (straddle_price - strike + forward) / 2.0;
}

}  // namespace statearb
