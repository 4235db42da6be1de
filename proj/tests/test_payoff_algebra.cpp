#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Core>
#include <random>

#include "statearb/payoff_algebra.hpp"

using namespace statearb;

namespace {

GeneratorSet single_asset() {
  return GeneratorSet(1, {PayoffGenerator::asset(0, "x1")});
}

GeneratorSet two_assets() {
  return GeneratorSet(2, {PayoffGenerator::asset(0, "x1"),
                          PayoffGenerator::asset(1, "x2")});
}

GeneratorSet asset_and_straddle(double strike) {
  Eigen::VectorXd a(1);
  a << 1.0;
  return GeneratorSet(1, {PayoffGenerator::asset(0, "x1"),
                          PayoffGenerator::abs_linear(a, strike, "st")});
}

Eigen::VectorXi exps(std::initializer_list<int> values) {
  Eigen::VectorXi v(static_cast<int>(values.size()));
  int i = 0;
  for (int e : values) v[i++] = e;
  return v;
}

}  // namespace

TEST_CASE("enumerate: single-variable monomials") {
  const auto elems = enumerate_semigroup(single_asset(), 2);
  REQUIRE(elems.size() == 3);
  CHECK(elems[0].degree == 0);
  CHECK(elems[1].exponents[0] == 1);
  CHECK(elems[2].exponents[0] == 2);
}

TEST_CASE("enumerate: two assets, degree 2, graded lexicographic order") {
  const auto elems = enumerate_semigroup(two_assets(), 2);
  REQUIRE(elems.size() == 6);
  CHECK(elems[0].exponents == exps({0, 0}));
  CHECK(elems[1].exponents == exps({1, 0}));
  CHECK(elems[2].exponents == exps({0, 1}));
  CHECK(elems[3].exponents == exps({2, 0}));
  CHECK(elems[4].exponents == exps({1, 1}));
  CHECK(elems[5].exponents == exps({0, 2}));
  CHECK(elems.size() == count_basis(2, 2));
}

TEST_CASE("enumerate: asset plus straddle keeps the reduced square distinct") {
  const auto gens = asset_and_straddle(1.0);
  const auto elems = enumerate_semigroup(gens, 2);
  // {1, x1, st, x1^2, x1 st, st^2}; st^2 reduces to (x1-1)^2 but is not
  // coefficient-wise equal to any listed expansion.
  REQUIRE(elems.size() == 6);
  CHECK(elems[5].exponents == exps({0, 2}));
  CHECK(elems[5].expansion.residual.empty());
  REQUIRE(elems[5].expansion.terms.size() == 3);
  CHECK(elems[5].expansion.terms[0].second == doctest::Approx(1.0));   // x1^2
  CHECK(elems[5].expansion.terms[1].second == doctest::Approx(-2.0));  // x1
  CHECK(elems[5].expansion.terms[2].second == doctest::Approx(1.0));   // 1
  // Fundamental unknowns: 1, x1, st, x1^2, x1 st.
  int fundamentals = 0;
  for (const auto& e : elems) fundamentals += e.expansion.is_fundamental() ? 1 : 0;
  CHECK(fundamentals == 5);
}

TEST_CASE("enumerate: |x| straddle square collapses onto the monomial") {
  const auto gens = asset_and_straddle(0.0);
  const auto elems = enumerate_semigroup(gens, 2);
  CHECK(elems.size() == 5);  // st^2 == x1^2 exactly
}

TEST_CASE("enumerate rejects odd or negative truncation and empty generators") {
  CHECK_THROWS_AS(enumerate_semigroup(single_asset(), 3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_semigroup(single_asset(), -2), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_semigroup(GeneratorSet(0, {}), 2), std::invalid_argument);
}

TEST_CASE("canonicalize: pure monomial unchanged") {
  const auto gens = asset_and_straddle(1.0);
  const auto e = canonicalize(exps({2, 0}), gens);
  CHECK(e.expansion.residual.empty());
  REQUIRE(e.expansion.terms.size() == 1);
  CHECK(e.expansion.terms[0].second == doctest::Approx(1.0));
  CHECK(e.expansion.terms[0].first == exps({2}));
}

TEST_CASE("canonicalize: odd abs power leaves one residual factor") {
  const auto gens = asset_and_straddle(1.0);
  const auto e = canonicalize(exps({1, 3}), gens);
  REQUIRE(e.expansion.residual == std::vector<int>{1});
  // polynomial content x1 (x1 - 1)^2 = x1^3 - 2 x1^2 + x1
  REQUIRE(e.expansion.terms.size() == 3);
  CHECK(e.expansion.terms[0].first == exps({3}));
  CHECK(e.expansion.terms[0].second == doctest::Approx(1.0));
  CHECK(e.expansion.terms[1].first == exps({2}));
  CHECK(e.expansion.terms[1].second == doctest::Approx(-2.0));
  CHECK(e.expansion.terms[2].first == exps({1}));
  CHECK(e.expansion.terms[2].second == doctest::Approx(1.0));

  Eigen::VectorXd x(1);
  x << 3.0;
  CHECK(evaluate(e, gens, x) == doctest::Approx(24.0));
  CHECK(e.expansion.value_at(gens, x) == doctest::Approx(24.0));
}

TEST_CASE("canonicalize is idempotent") {
  const auto gens = asset_and_straddle(1.0);
  for (auto raw : {exps({0, 2}), exps({1, 3}), exps({2, 1})}) {
    const auto once = canonicalize(raw, gens);
    const auto twice = canonicalize(once.exponents, gens);
    CHECK(once.expansion.approx_equal(twice.expansion));
    CHECK(once.degree == twice.degree);
  }
}

TEST_CASE("canonicalize rejects bad exponent vectors") {
  const auto gens = asset_and_straddle(1.0);
  CHECK_THROWS_AS(canonicalize(exps({1}), gens), std::invalid_argument);
  CHECK_THROWS_AS(canonicalize(exps({-1, 0}), gens), std::invalid_argument);
}

TEST_CASE("evaluate matches direct arithmetic") {
  const auto gens = asset_and_straddle(1.0);
  Eigen::VectorXd x(1);
  x << 3.0;
  CHECK(evaluate(canonicalize(exps({0, 0}), gens), gens, x) == doctest::Approx(1.0));
  CHECK(evaluate(canonicalize(exps({1, 1}), gens), gens, x) == doctest::Approx(6.0));

  Eigen::VectorXd a(2);
  a << 1.0, -1.0;
  GeneratorSet spread(2, {PayoffGenerator::asset(0, "x1"), PayoffGenerator::asset(1, "x2"),
                          PayoffGenerator::abs_linear(a, 0.1, "sp")});
  Eigen::VectorXd p(2);
  p << 0.5, 0.2;
  CHECK(evaluate(canonicalize(exps({0, 0, 1}), spread), spread, p) ==
        doctest::Approx(0.2));
}

TEST_CASE("count_basis values and overflow") {
  CHECK(count_basis(2, 2) == 6);
  CHECK(count_basis(5, 0) == 1);
  CHECK(count_basis_reduced(2, 3, 1) == 24);
  CHECK_THROWS_AS(count_basis(60, 60), std::overflow_error);
  CHECK_THROWS_AS(count_basis(-1, 2), std::invalid_argument);
}

TEST_CASE("straddle/call conversion") {
  CHECK(straddle_price_from_call(1.0, 1.0, 0.1) == doctest::Approx(0.2));
  CHECK(straddle_price_from_call(0.5, 0.4, 0.15) == doctest::Approx(0.2));
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double p = u(rng), k = u(rng), c = u(rng);
    const double q = straddle_price_from_call(p, k, c);
    CHECK(call_price_from_straddle(p, k, q) == doctest::Approx(c).epsilon(1e-14));
  }
}

TEST_CASE("property: pointwise reduction soundness") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  Eigen::VectorXd a1(2), a2(2), a3(2);
  a1 << 1.0, 0.0;
  a2 << 0.0, 1.0;
  a3 << 1.0, -1.0;
  GeneratorSet gens(2, {PayoffGenerator::asset(0, "x1"), PayoffGenerator::asset(1, "x2"),
                        PayoffGenerator::abs_linear(a1, 0.5, "st1"),
                        PayoffGenerator::abs_linear(a2, 0.35, "st2"),
                        PayoffGenerator::abs_linear(a3, 0.1, "sp")});
  std::uniform_int_distribution<int> ue(0, 2);
  for (int trial = 0; trial < 1000; ++trial) {
    Eigen::VectorXi raw(5);
    for (int i = 0; i < 5; ++i) raw[i] = ue(rng);
    const auto elem = canonicalize(raw, gens);
    Eigen::VectorXd x(2);
    x << u01(rng), u01(rng);
    const double direct = evaluate(elem, gens, x);
    const double via_expansion = elem.expansion.value_at(gens, x);
    CHECK(std::abs(direct - via_expansion) <=
          1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("property: enumeration is sorted, duplicate-free, divisor-closed") {
  const auto gens = asset_and_straddle(0.5);
  const auto elems = enumerate_semigroup(gens, 4);
  for (std::size_t i = 1; i < elems.size(); ++i) {
    CHECK(element_less(elems[i - 1], elems[i]));
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      CHECK_FALSE(elems[i].expansion.approx_equal(elems[j].expansion));
    }
  }
  // Divisor closure: every componentwise-smaller exponent vector appears.
  for (const auto& e : elems) {
    Eigen::VectorXi divisor = e.exponents;
    for (int i = 0; i < divisor.size(); ++i) {
      if (divisor[i] == 0) continue;
      divisor[i] -= 1;
      const auto d = canonicalize(divisor, gens);
      bool found = false;
      for (const auto& other : elems) {
        if (other.expansion.approx_equal(d.expansion)) found = true;
      }
      CHECK(found);
      divisor[i] += 1;
    }
  }
}

TEST_CASE("property: semicharacter multiplicativity") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const auto gens = asset_and_straddle(0.5);
  const auto elems = enumerate_semigroup(gens, 4);
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  int done = 0;
  while (done < 200) {
    const auto& s = elems[pick(rng)];
    const auto& t = elems[pick(rng)];
    if (s.degree + t.degree > 4) continue;
    const auto st = canonicalize(s.exponents + t.exponents, gens);
    Eigen::VectorXd x(1);
    x << u01(rng);
    const double lhs = evaluate(st, gens, x);
    const double rhs = evaluate(s, gens, x) * evaluate(t, gens, x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    ++done;
  }
}

TEST_CASE("count matches enumeration for pure monomial generators") {
  for (int n = 1; n <= 3; ++n) {
    std::vector<PayoffGenerator> gens;
    for (int i = 0; i < n; ++i) gens.push_back(PayoffGenerator::asset(i, "x"));
    GeneratorSet gs(n, gens);
    for (int twod : {0, 2, 4}) {
      CHECK(enumerate_semigroup(gs, twod).size() == count_basis(n, twod));
    }
  }
}
