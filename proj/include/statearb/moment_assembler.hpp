#pragma once

// Truncated linear-matrix-inequality blocks for the one-period no-arbitrage
// test: the moment matrix, one localizing matrix per generator, and the
// support matrix for beta - sum_i e_i(x) >= 0, all affine in the moment
// unknowns with the quoted prices pinned.

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "statearb/market.hpp"
#include "statearb/payoff_algebra.hpp"

namespace statearb {

// constant + sum coeff_k * y_slot_k
struct AffineExpr {
  double constant = 0.0;
  std::vector<std::pair<int, double>> terms;  // sorted by slot, merged

  bool is_constant() const { return terms.empty(); }
  double value_at(const Eigen::VectorXd& y) const;
  void add_term(int slot, double coeff);
  AffineExpr& axpy(double scale, const AffineExpr& other);
};

// Bijection between fundamental semigroup elements of degree <= 2d (a single
// asset monomial times a subset of abs-linear factors) and either a pinned
// value -- f(1) = 1 and the quoted prices -- or a variable slot.
class MomentIndex {
 public:
  MomentIndex(GeneratorSet generators, std::vector<std::optional<double>> prices,
              int entry_degree);

  const GeneratorSet& generators() const { return generators_; }
  int entry_degree() const { return entry_degree_; }
  int num_slots() const { return num_slots_; }

  // Canonical elements of degree <= entry_degree, deduplicated and ordered.
  const std::vector<SemigroupElement>& elements() const { return elements_; }
  // The subset usable as matrix index rows, restricted to max_degree.
  std::vector<SemigroupElement> fundamental_basis(int max_degree) const;

  AffineExpr moment(const SemigroupElement& element) const;
  AffineExpr moment_of_exponents(const Eigen::VectorXi& raw_exponents) const;

  std::string slot_name(int slot) const;
  std::vector<std::string> slot_names() const;
  // Slot assignment induced by pricing every fundamental element, e.g. with
  // expectations under a candidate measure.
  Eigen::VectorXd slot_values(
      const std::function<double(const SemigroupElement&)>& price_of) const;

 private:
  struct Entry {
    bool pinned = false;
    double value = 0.0;
    int slot = -1;
  };

  const Entry& lookup(const Eigen::VectorXi& monomial,
                      const std::vector<int>& residual) const;

  GeneratorSet generators_;
  int entry_degree_ = 0;
  int num_slots_ = 0;
  std::vector<SemigroupElement> elements_;
  std::vector<SemigroupElement> slot_elements_;
  std::vector<std::pair<std::vector<int>, Entry>> table_;  // sorted keys
};

// Symmetric matrix of affine expressions.
struct LmiBlock {
  std::string label;
  int dim = 0;
  std::vector<AffineExpr> cells;  // row-major, dim * dim

  const AffineExpr& at(int i, int j) const { return cells[i * dim + j]; }
  Eigen::MatrixXd value_at(const Eigen::VectorXd& y) const;
};

struct BetaBound {
  double value = 0.0;
};

// Smallest valid support bound: sum over generators of the payoff supremum
// on [0, B].
BetaBound compute_beta(const GeneratorSet& generators,
                       const Eigen::VectorXd& support_max);

// Condition (i): cell (s, t) = f(s t) over the degree-<= d basis.
LmiBlock build_moment_matrix(const MomentIndex& index, int d);
// Condition (ii): cell (s, t) = f(e_g s t) over the degree-<= d-1 basis.
LmiBlock build_localizing_matrix(const MomentIndex& index, int generator_id, int d);
// Condition (iii): cell (s, t) = beta f(s t) - sum_g f(e_g s t).
LmiBlock build_beta_matrix(const MomentIndex& index, double beta, int d);

struct MomentProblem {
  MomentIndex index;
  BetaBound beta;
  std::vector<LmiBlock> blocks;  // moment, n+m localizing, beta
};

// Refuses to build once the element count passes this bound.
inline constexpr int kMaxBasisElements = 5000;

MomentProblem assemble(const MarketInstance& market, int d);
// Same, with an extra unpriced generator whose moment becomes an objective;
// a target equal to an existing generator is not duplicated.
MomentProblem assemble_with_target(const MarketInstance& market,
                                   const PayoffGenerator& target, int d);

}  // namespace statearb
