#include <cmath>

#include <gtest/gtest.h>

#include "fpconvex/error.hpp"
#include "fpconvex/integrator.hpp"

namespace {

using namespace fpconvex;
using Eigen::VectorXd;

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(a + (b - a) * i / (count - 1));
  return out;
}

TEST(Dopri5, ExponentialDecay) {
  const OdeRhs rhs = [](double, const VectorXd& y) { return VectorXd(-y); };
  VectorXd y0(1);
  y0 << 1.0;
  const auto times = linspace(0.0, 3.0, 31);
  const OdeSolution sol = integrate_dopri5(rhs, y0, 0.0, times, IntegratorOptions{});
  ASSERT_EQ(sol.states.size(), times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_DOUBLE_EQ(sol.times[i], times[i]);
    EXPECT_NEAR(sol.states[i][0], std::exp(-times[i]), 1e-8);
  }
}

TEST(Dopri5, HarmonicOscillatorConservesEnergy) {
  const OdeRhs rhs = [](double, const VectorXd& y) {
    VectorXd d(2);
    d << y[1], -y[0];
    return d;
  };
  VectorXd y0(2);
  y0 << 1.0, 0.0;
  IntegratorOptions opts;
  opts.atol = opts.rtol = 1e-11;
  const OdeSolution sol = integrate_dopri5(rhs, y0, 0.0, {2.0 * M_PI}, opts);
  EXPECT_NEAR(sol.states.back()[0], 1.0, 1e-8);
  EXPECT_NEAR(sol.states.back()[1], 0.0, 1e-8);
}

TEST(Dopri5, GuardRejectsInadmissibleSteps) {
  // y' = -1 from y = 1 reaches zero at t = 1; sampled before that, the guard
  // keeps every accepted state positive.
  const OdeRhs rhs = [](double, const VectorXd& y) { return VectorXd::Constant(y.size(), -1.0); };
  VectorXd y0(1);
  y0 << 1.0;
  IntegratorOptions opts;
  opts.initial_step = 0.5;
  const OdeSolution sol =
      integrate_dopri5(rhs, y0, 0.0, {0.99}, opts, [](const VectorXd& y) { return y[0] > 0.0; });
  EXPECT_NEAR(sol.states.back()[0], 0.01, 1e-12);
}

TEST(Dopri5, ThrowsWhenStepCollapses) {
  // Blow-up at t = 1.
  const OdeRhs rhs = [](double, const VectorXd& y) { return VectorXd(y.array().square()); };
  VectorXd y0(1);
  y0 << 1.0;
  try {
    integrate_dopri5(rhs, y0, 0.0, {2.0}, IntegratorOptions{});
    FAIL() << "expected IntegrationError";
  } catch (const IntegrationError& e) {
    EXPECT_LT(e.last_time(), 1.0);
    EXPECT_GT(e.last_time(), 0.9);
    EXPECT_EQ(e.last_state().size(), 1);
  }
}

TEST(Dopri5, DomainErrorInRhsIsTreatedAsRejection) {
  const OdeRhs rhs = [](double, const VectorXd& y) {
    if (y[0] <= 0.0) throw DomainError("negative");
    return VectorXd(-0.5 / y.array());
  };
  VectorXd y0(1);
  y0 << 1.0;
  IntegratorOptions opts;
  opts.initial_step = 1.0;
  const OdeSolution sol = integrate_dopri5(rhs, y0, 0.0, {0.5}, opts);
  EXPECT_NEAR(sol.states.back()[0], std::sqrt(0.5), 1e-8);
}

TEST(Rk4, FourthOrderConvergence) {
  const OdeRhs rhs = [](double t, const VectorXd& y) { return VectorXd(std::cos(t) * y); };
  VectorXd y0(1);
  y0 << 1.0;
  const double exact = std::exp(std::sin(2.0));
  const double e1 = std::abs(integrate_rk4(rhs, y0, 0.0, 2.0, 20).back()[0] - exact);
  const double e2 = std::abs(integrate_rk4(rhs, y0, 0.0, 2.0, 40).back()[0] - exact);
  EXPECT_NEAR(std::log2(e1 / e2), 4.0, 0.3);
  EXPECT_EQ(integrate_rk4(rhs, y0, 0.0, 2.0, 40).size(), 41u);
}

}  // namespace
