#include <cmath>

#include <gtest/gtest.h>

#include "fpconvex/error.hpp"
#include "fpconvex/means.hpp"
#include "fpconvex/random.hpp"

namespace {

using namespace fpconvex;

/// Central difference of a mean in its first or second argument.
double numeric_partial(const MeanFunction& m, double s, double t, int which) {
  const double step = 1e-6 * (which == 1 ? s : t);
  if (which == 1) return (m(s + step, t) - m(s - step, t)) / (2.0 * step);
  return (m(s, t + step) - m(s, t - step)) / (2.0 * step);
}

std::vector<MeanFunction> all_means() {
  return {MeanFunction::logarithmic(),
          MeanFunction::power(0.5),
          MeanFunction::power(1.5),
          MeanFunction::power(2.0),
          MeanFunction::power(3.0),
          MeanFunction::f_mean(boltzmann_density()),
          MeanFunction::f_mean(power_function(1.5)),
          MeanFunction::f_mean(power_function(2.0)),
          MeanFunction::f_mean(custom_function(
              "s^3", [](double s) { return s * s * s; }, [](double s) { return 3.0 * s * s; },
              [](double s) { return 6.0 * s; }, [](double) { return 6.0; })),
          MeanFunction::quotient(power_function(2.0), custom_function(
                                                            "2s", [](double s) { return 2.0 * s; },
                                                            [](double) { return 2.0; }, [](double) { return 0.0; },
                                                            [](double) { return 0.0; }))};
}

TEST(LogMean, ReferenceValues) {
  EXPECT_NEAR(log_mean(1.0, 4.0), 2.1640425613334453, 1e-15);
  EXPECT_DOUBLE_EQ(log_mean(3.0, 3.0), 3.0);
  EXPECT_NEAR(log_mean(1.0, std::exp(1.0)), std::exp(1.0) - 1.0, 1e-15);
}

TEST(LogMean, PartialsReferenceValues) {
  const MeanPartials p = mean_partials(MeanFunction::logarithmic(), 1.0, 2.0);
  EXPECT_NEAR(p.d1, 0.63867394011664436, 1e-14);
  EXPECT_NEAR(p.d1 + p.d2, 1.0406844905028039, 1e-14);
}

TEST(LogMean, ContinuousAcrossSeriesBands) {
  for (double e : {1e-9, 1e-7, 0.999e-2, 1.001e-2, 0.4999, 0.5001}) {
    const double s = 1.0 + e, t = 1.0 - e;
    // s - t is exact, so log1p keeps the reference accurate near the diagonal.
    const double exact = (s - t) / std::log1p((s - t) / t);
    EXPECT_NEAR(log_mean(s, t), exact, 1e-13 * exact) << "e=" << e;
  }
}

TEST(FMean, ReferenceValues) {
  EXPECT_NEAR(f_mean(power_function(1.5), 1.0, 2.0), 1.6094757082487299, 1e-14);
  EXPECT_NEAR(f_mean(boltzmann_density(), 1.0, 4.0), log_mean(1.0, 4.0), 1e-14);
  EXPECT_DOUBLE_EQ(f_mean(power_function(2.0), 0.3, 7.0), 0.5);
}

TEST(PowerMean, ReferenceValues) {
  EXPECT_NEAR(power_mean(0.5, 1.0, 4.0), 2.0, 1e-14);
  EXPECT_NEAR(power_mean(2.0, 1.0, 4.0), 2.5, 1e-14);
  EXPECT_NEAR(power_mean(1.0, 1.0, 4.0), log_mean(1.0, 4.0), 1e-14);
}

TEST(QuotientMean, MatchesPowerMean) {
  const SmoothFunction phi = power_function(0.5);
  const SmoothFunction du = custom_function(
      "-1/sqrt", [](double s) { return -1.0 / std::sqrt(s); },
      [](double s) { return 0.5 * std::pow(s, -1.5); }, [](double s) { return -0.75 * std::pow(s, -2.5); },
      [](double s) { return 1.875 * std::pow(s, -3.5); });
  EXPECT_NEAR(quotient_mean(phi, du, 1.0, 4.0), 2.0, 1e-14);
}

TEST(Means, SymmetricAndBetweenMinAndMax) {
  Rng rng(1);
  for (const MeanFunction& m : all_means()) {
    for (int k = 0; k < 200; ++k) {
      const double s = rng.log_uniform(0.01, 100.0), t = rng.log_uniform(0.01, 100.0);
      const double v = m(s, t);
      EXPECT_NEAR(v, m(t, s), 1e-13 * v) << m.name();
      if (m.kind() != MeanFunction::Kind::FMean && m.kind() != MeanFunction::Kind::Quotient) {
        EXPECT_LE(v, std::max(s, t) * (1.0 + 1e-13)) << m.name();
        EXPECT_GE(v, std::min(s, t) * (1.0 - 1e-13)) << m.name();
      }
    }
  }
}

TEST(Means, PartialsMatchCentralDifferences) {
  Rng rng(2);
  for (const MeanFunction& m : all_means()) {
    for (int k = 0; k < 200; ++k) {
      const double s = rng.log_uniform(0.05, 20.0), t = rng.log_uniform(0.05, 20.0);
      const MeanPartials p = m.partials(s, t);
      const double scale = std::max(1.0, std::abs(p.d1) + std::abs(p.d2));
      EXPECT_NEAR(p.d1, numeric_partial(m, s, t, 1), 1e-6 * scale) << m.name() << " s=" << s << " t=" << t;
      EXPECT_NEAR(p.d2, numeric_partial(m, s, t, 2), 1e-6 * scale) << m.name() << " s=" << s << " t=" << t;
    }
  }
}

TEST(Means, DiagonalLimitIsContinuous) {
  for (const MeanFunction& m : all_means()) {
    for (double s : {0.1, 1.0, 7.0}) {
      const double on = m(s, s);
      const double off = m(s * (1.0 + 1e-7), s);
      EXPECT_NEAR(on, off, 1e-6 * on) << m.name();
      const MeanPartials p_on = m.partials(s, s);
      const MeanPartials p_off = m.partials(s * (1.0 + 1e-6), s);
      EXPECT_NEAR(p_on.d1, p_off.d1, 1e-5 * std::max(1.0, std::abs(p_on.d1))) << m.name();
      EXPECT_NEAR(p_on.d1, p_on.d2, 1e-12 * std::max(1.0, std::abs(p_on.d1))) << m.name();
    }
  }
}

TEST(Means, RejectNonpositiveArguments) {
  EXPECT_THROW(log_mean(0.0, 1.0), DomainError);
  EXPECT_THROW(log_mean(1.0, -2.0), DomainError);
  EXPECT_THROW(power_mean(1.5, std::nan(""), 1.0), DomainError);
  EXPECT_THROW(f_mean(power_function(0.5), 1.0, 2.0), DomainError);
  EXPECT_THROW(power_function(0.0), DomainError);
}

TEST(Means, IdentityFMeanIsDegenerate) {
  EXPECT_THROW(f_mean(identity_function(), 1.0, 2.0), DegenerateMeanError);
}

TEST(LogMeanIdentities, HoldsOnRandomPoints) {
  Rng rng(3);
  for (int k = 0; k < 500; ++k) {
    const double s = rng.log_uniform(0.05, 20.0), t = rng.log_uniform(0.05, 20.0);
    const double a = rng.log_uniform(0.05, 20.0), b = rng.log_uniform(0.05, 20.0);
    const PropertyReport r = check_log_mean_identities(s, t, a, b, default_r_grid(t));
    ASSERT_EQ(r.results.size(), 5u);
    EXPECT_TRUE(r.all_passed()) << "s=" << s << " t=" << t;
  }
}

TEST(LogMeanIdentities, DiagonalPoint) {
  const PropertyReport r = check_log_mean_identities(2.0, 2.0, 1.0, 1.0, default_r_grid(2.0));
  EXPECT_TRUE(r.all_passed());
}

TEST(Concavity, LogarithmicAndPowerMeansPass) {
  for (const MeanFunction& m : {MeanFunction::logarithmic(), MeanFunction::power(1.5), MeanFunction::power(2.0),
                                MeanFunction::f_mean(power_function(1.5))}) {
    const PropertyReport r = check_concavity(m, 2000, 5);
    EXPECT_TRUE(r.all_passed()) << m.name() << " worst " << r.worst_residual("hessian_negative_semidefinite");
  }
}

TEST(Concavity, DetectsNonConcaveMean) {
  const PropertyReport r = check_concavity(MeanFunction::power(3.0), 2000, 5);
  EXPECT_FALSE(r.all_passed());
  const PropertyResult* hess = r.find("hessian_negative_semidefinite");
  ASSERT_NE(hess, nullptr);
  EXPECT_FALSE(hess->passed);
  EXPECT_FALSE(hess->witness.empty());
}

TEST(Concavity, DeterministicForSeed) {
  const PropertyReport a = check_concavity(MeanFunction::logarithmic(), 500, 42);
  const PropertyReport b = check_concavity(MeanFunction::logarithmic(), 500, 42);
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) EXPECT_EQ(a.results[i].residual, b.results[i].residual);
}

}  // namespace
