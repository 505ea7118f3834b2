#include <gtest/gtest.h>

#include "fpconvex/counterexample.hpp"
#include "fpconvex/error.hpp"
#include "fpconvex/random.hpp"

namespace {

using namespace fpconvex;

Rational evaluate(const Polynomial& p, const std::array<Rational, 5>& r) {
  Rational sum(0);
  for (const auto& [m, c] : p) {
    Rational term = c;
    for (int d = 0; d < 5; ++d)
      for (int e = 0; e < m[d]; ++e) term *= r[d];
    sum += term;
  }
  return sum;
}

TEST(Counterexample, ReconstructionReproducesTheMinorExactly) {
  const Polynomial p = reconstruct_minor_polynomial();
  Rng rng(1);
  for (int k = 0; k < 50; ++k) {
    std::array<Rational, 5> r;
    for (auto& x : r) x = Rational(static_cast<std::int64_t>(rng.next() % 13) - 3, 1 + static_cast<std::int64_t>(rng.next() % 4));
    EXPECT_EQ(evaluate(p, r), counterexample_minor_of<Rational>(r));
  }
}

TEST(Counterexample, QuarticAndHomogeneous) {
  for (const auto& [m, c] : reconstruct_minor_polynomial()) {
    int degree = 0;
    for (int e : m) degree += e;
    EXPECT_EQ(degree, 4) << monomial_to_string(m);
    EXPECT_NE(c, Rational(0));
  }
}

TEST(Counterexample, PrintedTableHasTwentyTerms) {
  EXPECT_EQ(printed_minor_expansion().size(), 20u);
  EXPECT_EQ(printed_minor_expansion().at({0, 0, 4, 0, 0}), Rational(-13, 4));
}

TEST(Counterexample, ComparisonMarksDifferingCoefficients) {
  const PolynomialComparison cmp = compare_with_printed(reconstruct_minor_polynomial(), printed_minor_expansion());
  const CoefficientComparison* quartic = cmp.find({0, 0, 4, 0, 0});
  ASSERT_NE(quartic, nullptr);
  EXPECT_EQ(quartic->printed, Rational(-13, 4));
  EXPECT_EQ(quartic->reconstructed, Rational(-7, 4));
  const CoefficientComparison* mixed = cmp.find({2, 2, 0, 0, 0});
  ASSERT_NE(mixed, nullptr);
  EXPECT_EQ(mixed->printed, Rational(1, 2));
  EXPECT_EQ(mixed->reconstructed, Rational(1, 4));
  EXPECT_FALSE(cmp.all_match());
  EXPECT_TRUE(compare_with_printed(printed_minor_expansion(), printed_minor_expansion()).all_match());
}

TEST(Counterexample, Formatting) {
  EXPECT_EQ(monomial_to_string({2, 1, 0, 0, 0}), "rho0^2*rho1");
  EXPECT_EQ(monomial_to_string({0, 0, 0, 0, 0}), "1");
  EXPECT_EQ(rational_to_string(Rational(-13, 4)), "-13/4");
  EXPECT_EQ(rational_to_string(Rational(3)), "3");
}

TEST(Counterexample, DoubleMinorMatchesRational) {
  Eigen::VectorXd rho(5);
  rho << 0.1, 0.2, 0.9, 0.3, 0.15;
  const double expected = boost::rational_cast<double>(counterexample_minor_of<Rational>(
      {Rational(1, 10), Rational(2, 10), Rational(9, 10), Rational(3, 10), Rational(15, 100)}));
  EXPECT_NEAR(counterexample_minor(rho), expected, 1e-14);
  EXPECT_THROW(counterexample_minor(Eigen::VectorXd::Ones(4)), ScopeError);
}

TEST(Counterexample, SearchFindsWitnessAtSeedZero) {
  const CounterexampleWitness w = search_counterexample(0, 100000);
  ASSERT_TRUE(w.found);
  EXPECT_LE(w.draws, 100000u);
  EXPECT_LT(w.minor, 0.0);
  EXPECT_NEAR(w.state.sum(), 1.0, 1e-14);
  EXPECT_EQ(w.report.certificate, Certificate::NotPSD);
  EXPECT_LT(w.report.witness_value, 0.0);
  const CounterexampleWitness again = search_counterexample(0, 100000);
  EXPECT_EQ(again.draws, w.draws);
  EXPECT_EQ(again.minor, w.minor);
}

}  // namespace
