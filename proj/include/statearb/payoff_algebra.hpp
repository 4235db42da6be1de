#pragma once

// Market payoffs as evaluable symbolic objects, and the multiplicative
// semigroup they generate. Products of absolute-value payoffs are reduced
// through |a.x - K|^2 = (a.x - K)^2, so every element splits into a
// polynomial part over the asset coordinates and a residual set of
// absolute-value factors, each appearing at most once.

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <vector>

namespace statearb {

// One semigroup generator: an asset coordinate x_i, or |a.x - K|.
class PayoffGenerator {
 public:
  enum class Kind { Asset, AbsLinear };

  PayoffGenerator() = default;  // placeholder; build through the factories

  static PayoffGenerator asset(int index, std::string name);
  static PayoffGenerator abs_linear(Eigen::VectorXd coefficients, double offset,
                                    std::string name);

  Kind kind() const { return kind_; }
  int asset_index() const { return asset_index_; }
  const Eigen::VectorXd& coefficients() const { return coefficients_; }
  double offset() const { return offset_; }
  const std::string& name() const { return name_; }

  double value_at(const Eigen::VectorXd& x) const;
  // Exact supremum of the payoff over the box [0, upper].
  double sup_on_box(const Eigen::VectorXd& upper) const;

  bool same_payoff(const PayoffGenerator& other, double tol = 1e-12) const;

 private:
  Kind kind_ = Kind::Asset;
  int asset_index_ = -1;           // valid for Asset
  Eigen::VectorXd coefficients_;   // valid for AbsLinear, length n
  double offset_ = 0.0;            // strike K
  std::string name_;
};

// Generators in canonical order: assets x_1..x_n first (by index), then the
// AbsLinear payoffs in declaration order.
class GeneratorSet {
 public:
  GeneratorSet(int num_assets, std::vector<PayoffGenerator> generators);

  int size() const { return static_cast<int>(generators_.size()); }
  int num_assets() const { return num_assets_; }
  int num_abs() const { return size() - num_assets_; }
  const PayoffGenerator& operator[](int i) const { return generators_[i]; }
  const std::vector<PayoffGenerator>& all() const { return generators_; }

  GeneratorSet with_appended(PayoffGenerator extra) const;

 private:
  int num_assets_ = 0;
  std::vector<PayoffGenerator> generators_;
};

// Canonical content of one semigroup element:
//   element(x) = sum_t coeff_t * x^monomial_t  *  prod_{j in residual} gen_j(x)
// residual holds generator ids of AbsLinear factors with odd exponent.
struct PolynomialExpansion {
  std::vector<std::pair<Eigen::VectorXi, double>> terms;  // monomials over assets
  std::vector<int> residual;                              // sorted generator ids

  double value_at(const GeneratorSet& generators, const Eigen::VectorXd& x) const;
  bool approx_equal(const PolynomialExpansion& other, double tol = 1e-12) const;
  // True when the expansion is a single unit-coefficient monomial, i.e. the
  // element is itself a moment unknown rather than a combination of them.
  bool is_fundamental(double tol = 1e-12) const;
  int poly_degree() const;
};

struct SemigroupElement {
  Eigen::VectorXi exponents;      // one entry per generator, as multiplied
  int degree = 0;                 // total degree of the payoff
  PolynomialExpansion expansion;  // canonical content

  bool is_identity() const { return degree == 0; }
};

// Strict total order: degree first, then lexicographically larger exponent
// vector first, ties broken on the expansion. Matches the listing order
// 1, x1, .., xn, s1, .., sm, x1^2, x1 x2, ...
bool element_less(const SemigroupElement& a, const SemigroupElement& b);

SemigroupElement canonicalize(const Eigen::VectorXi& exponents,
                              const GeneratorSet& generators);

// All distinct canonical elements of degree <= max_degree (even), sorted by
// element_less, deduplicated by expansion equality. The identity comes first.
std::vector<SemigroupElement> enumerate_semigroup(const GeneratorSet& generators,
                                                  int max_degree);

double evaluate(const SemigroupElement& element, const GeneratorSet& generators,
                const Eigen::VectorXd& x);

// C(n_generators + degree, n_generators); throws std::overflow_error instead
// of wrapping.
std::uint64_t count_basis(int n_generators, int degree);
// Basis count after the squared-straddle reduction: (k + 1) * C(n + 2d, n)
// for k AbsLinear generators over n assets.
std::uint64_t count_basis_reduced(int n_assets, int n_abs, int d);

// |x - K| = (K - x) + 2 (x - K)^+, so straddle and call quotes are affinely
// interchangeable given the forward.
double straddle_price_from_call(double forward, double strike, double call_price);
double call_price_from_straddle(double forward, double strike,
                                double straddle_price);

}  // namespace statearb
