#include <cmath>

#include <gtest/gtest.h>

#include "fpconvex/convexity.hpp"
#include "fpconvex/error.hpp"
#include "fpconvex/random.hpp"

namespace {

using namespace fpconvex;
using Eigen::VectorXd;

/// Entrywise comparison: band entries relative to themselves, the rest
/// relative to the largest entry.
double band_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double big = b.cwiseAbs().maxCoeff();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < b.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      const double denom = std::abs(i - j) <= 1 ? std::max(std::abs(b(i, j)), 1e-12 * big) : big;
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)) / denom);
    }
  return worst;
}

TEST(TildeM, HeatClosedFormMatchesDense) {
  Rng rng(1);
  for (const SmoothFunction& f : {boltzmann_density(), power_function(1.5), power_function(2.0)}) {
    for (int n : {2, 3, 7, 12}) {
      const FlowSystem sys = FlowSystem::heat(build_grid(n), f);
      const VectorXd rho = random_interior_state(n + 1, rng);
      EXPECT_LE(band_error(assemble_heat_tilde_m(sys, rho).dense(), dense_tilde_m(sys, rho)), 1e-9) << f.name;
    }
  }
}

TEST(TildeM, FokkerPlanckClosedFormMatchesDense) {
  Rng rng(2);
  for (double gamma : {0.0, 0.5, 1.0, 3.0}) {
    for (const SmoothFunction& phi : {identity_function(), power_function(0.5), power_function(1.7)}) {
      for (int n : {2, 5, 11}) {
        const FlowSystem sys = FlowSystem::fokker_planck(build_grid(n), Potential::quadratic(gamma), phi);
        const VectorXd rho = random_interior_state(n + 1, rng);
        EXPECT_LE(band_error(assemble_fp_tilde_m(sys, rho).dense(), dense_tilde_m(sys, rho)), 1e-9)
            << "gamma=" << gamma << " phi=" << phi.name << " n=" << n;
      }
    }
  }
}

TEST(TildeM, PrintedCoefficientAgreesOnlyWithoutPotential) {
  Rng rng(3);
  const VectorXd rho = random_interior_state(9, rng);
  const FlowSystem flat = FlowSystem::fokker_planck(build_grid(8), Potential::zero(), power_function(0.5));
  EXPECT_LE(band_error(assemble_fp_tilde_m(flat, rho, FpCoefficients::AsPrinted).dense(), dense_tilde_m(flat, rho)),
            1e-9);
  const FlowSystem tilted = FlowSystem::fokker_planck(build_grid(8), Potential::quadratic(1.0), power_function(0.5));
  EXPECT_GT(band_error(assemble_fp_tilde_m(tilted, rho, FpCoefficients::AsPrinted).dense(),
                       dense_tilde_m(tilted, rho)),
            1e-6);
}

TEST(TildeM, HeatFormulaNeedsHeatSetting) {
  const FlowSystem sys = FlowSystem::fokker_planck(build_grid(4), Potential::quadratic(1.0), identity_function());
  EXPECT_THROW(assemble_heat_tilde_m(sys, uniform_state(5)), ScopeError);
}

TEST(TildeM, SecondDerivativeFormulaUsesEdgeForm) {
  Rng rng(4);
  const FlowSystem sys = FlowSystem::fokker_planck(build_grid(6), Potential::quadratic(1.0), identity_function());
  const VectorXd rho = random_interior_state(7, rng);
  VectorXd psi(7);
  for (int i = 0; i < 7; ++i) psi[i] = rng.normal();
  const double expected = 0.5 * psi.dot(dense_node_m(sys, rho) * psi);
  EXPECT_NEAR(second_derivative_formula(sys, rho, psi), expected, 1e-9 * std::max(1.0, std::abs(expected)));
}

TEST(LambdaH, ReferenceValue) {
  const FlowSystem sys = FlowSystem::fokker_planck(build_grid(10), Potential::quadratic(1.0), identity_function());
  EXPECT_NEAR(lambda_h(sys, uniform_state(11)), 0.99750416146353738, 1e-15);
}

TEST(LambdaH, ClosedFormForIdentity) {
  for (int n : {8, 16, 32, 64}) {
    const FlowSystem sys = FlowSystem::fokker_planck(build_grid(n), Potential::quadratic(2.0), identity_function());
    const double h = sys.grid.h;
    EXPECT_NEAR(lambda_h(sys, uniform_state(n + 1)), 2.0 / (h * h) * (1.0 - std::exp(-h * h)), 1e-13);
  }
}

TEST(LambdaH, ZeroAndCustomPotentials) {
  const FlowSystem flat = FlowSystem::fokker_planck(build_grid(4), Potential::zero(), power_function(0.5));
  EXPECT_EQ(lambda_h(flat, uniform_state(5)), 0.0);
  const FlowSystem custom = FlowSystem::fokker_planck(
      build_grid(4), Potential::custom_potential([](double x) { return x; }), identity_function());
  EXPECT_THROW(lambda_h(custom, uniform_state(5)), ScopeError);
}

TEST(Certify, HeatStatesAreDominant) {
  Rng rng(5);
  for (const SmoothFunction& f : {boltzmann_density(), power_function(1.5), power_function(2.0)}) {
    const FlowSystem sys = FlowSystem::heat(build_grid(8), f);
    for (int k = 0; k < 100; ++k) {
      const VectorXd rho = random_interior_state(9, rng);
      const ConvexityReport r = certify(assemble_heat_tilde_m(sys, rho), edge_weights(sys, rho), 0.0);
      EXPECT_EQ(r.certificate, Certificate::DominanceCertified) << f.name;
      EXPECT_GE(r.smallest_eigenvalue, 0.0);
    }
  }
}

TEST(Certify, FokkerPlanckAtLambdaH) {
  Rng rng(6);
  for (double alpha : {0.5, 1.0}) {
    const FlowSystem sys = FlowSystem::fokker_planck(build_grid(8), Potential::quadratic(1.0), power_function(alpha));
    for (int k = 0; k < 100; ++k) {
      const VectorXd rho = random_interior_state(9, rng);
      EXPECT_TRUE(certify(assemble_fp_tilde_m(sys, rho), edge_weights(sys, rho), lambda_h(sys, rho)).certified());
    }
  }
}

TEST(Certify, LargeLambdaGivesWitness) {
  // lambda_h + 10 is still certified at n = 8; a much larger shift is not.
  Rng rng(7);
  const FlowSystem sys = FlowSystem::fokker_planck(build_grid(8), Potential::quadratic(1.0), identity_function());
  const VectorXd rho = random_interior_state(9, rng);
  const TridiagonalMatrix m = assemble_fp_tilde_m(sys, rho);
  const VectorXd l = edge_weights(sys, rho);
  const ConvexityReport r = certify(m, l, lambda_h(sys, rho) + 1000.0);
  ASSERT_EQ(r.certificate, Certificate::NotPSD);
  ASSERT_EQ(r.witness.size(), 8);
  EXPECT_NEAR(r.witness.norm(), 1.0, 1e-12);
  EXPECT_LT(r.witness_value, 0.0);
  const double direct = r.witness.dot(m.apply(r.witness)) - r.lambda * r.witness.dot(l.cwiseProduct(r.witness));
  EXPECT_NEAR(direct, r.witness_value, 1e-8 * std::abs(direct));
  EXPECT_LT(r.smallest_eigenvalue, 0.0);
}

TEST(Certify, EigenvalueCertificateWithoutDominance) {
  // [[1, -0.9], [-0.9, 1]] scaled: not dominant after the shift but PSD.
  TridiagonalMatrix m;
  m.diagonal = VectorXd::Constant(3, 2.0);
  m.off = VectorXd::Constant(2, -1.2);
  m.scale = 1.0;
  const ConvexityReport r = certify(m, VectorXd::Ones(3), 0.0);
  EXPECT_EQ(r.certificate, Certificate::EigenvalueCertified);
  EXPECT_LT(r.dominance_margin, 0.0);
  EXPECT_NEAR(r.smallest_eigenvalue, 2.0 - 1.2 * std::sqrt(2.0), 1e-12);
}

TEST(Certify, SizeChecks) {
  TridiagonalMatrix m{VectorXd::Ones(3), VectorXd::Zero(2), 1.0};
  EXPECT_THROW(certify(m, VectorXd::Ones(4), 0.0), SizeMismatchError);
  EXPECT_EQ(to_string(Certificate::NotPSD), "NotPSD");
}

TEST(QuotientTildeM, RequiresThreeNodes) {
  VectorXd rho(2);
  rho << 0.5, 0.5;
  EXPECT_THROW(assemble_quotient_tilde_m(power_function(2.0), MeanFunction::power(2.0), rho, 1.0), ConfigurationError);
}

}  // namespace
