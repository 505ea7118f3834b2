#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <gtest/gtest.h>

#include "fpconvex/error.hpp"
#include "fpconvex/geodesics.hpp"
#include "fpconvex/random.hpp"

namespace {

using namespace fpconvex;
using Eigen::VectorXd;

double two_point_oracle(const FlowSystem& sys, double a, double b) {
  auto integrand = [&](double r) {
    VectorXd s(2);
    s << r, 1.0 - r;
    return sys.grid.h / std::sqrt(edge_weights(sys, s)[0]);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, std::min(a, b), std::max(a, b), 15,
                                                                       1e-13);
}

VectorXd two_point(double r) {
  VectorXd s(2);
  s << r, 1.0 - r;
  return s;
}

TEST(Geodesic, RhsIsHamiltonian) {
  Rng rng(1);
  const FlowSystem sys = FlowSystem::fokker_planck(build_grid(6), Potential::quadratic(1.0), power_function(0.7));
  const VectorXd rho = random_interior_state(7, rng);
  VectorXd psi(7);
  for (int i = 0; i < 7; ++i) psi[i] = rng.normal();
  const GeodesicVelocity v = geodesic_rhs(sys, rho, psi);
  const double eps = 1e-6;
  for (int i = 0; i < 7; ++i) {
    VectorXd e = VectorXd::Zero(7);
    e[i] = eps;
    const double dh_dpsi = (hamiltonian(sys, rho, psi + e) - hamiltonian(sys, rho, psi - e)) / (2.0 * eps);
    const double dh_drho = (hamiltonian(sys, rho + e, psi) - hamiltonian(sys, rho - e, psi)) / (2.0 * eps);
    EXPECT_NEAR(v.rho[i], dh_dpsi, 1e-6 * std::max(1.0, std::abs(dh_dpsi)));
    EXPECT_NEAR(v.psi[i], -dh_drho, 1e-6 * std::max(1.0, std::abs(dh_drho)));
  }
  EXPECT_NEAR(v.rho.sum(), 0.0, 1e-12 * v.rho.cwiseAbs().maxCoeff());
}

TEST(Geodesic, TrivialPath) {
  const FlowSystem sys = FlowSystem::heat(build_grid(4), boltzmann_density());
  const GeodesicPath p = shoot(sys, uniform_state(5), uniform_state(5));
  EXPECT_EQ(p.method, "trivial");
  EXPECT_EQ(p.distance(), 0.0);
}

TEST(Geodesic, TwoPointChainMatchesQuadrature) {
  for (const SmoothFunction& f : {boltzmann_density(), power_function(1.5)}) {
    const FlowSystem sys = FlowSystem::heat(two_point_grid(), f);
    for (auto [a, b] : {std::pair{0.2, 0.7}, std::pair{0.9, 0.1}, std::pair{0.45, 0.55}}) {
      const double oracle = two_point_oracle(sys, a, b);
      EXPECT_NEAR(distance(sys, two_point(a), two_point(b)), oracle, 1e-6 * oracle) << f.name;
    }
  }
}

TEST(Geodesic, ShootingHitsTargetWithConstantSpeed) {
  Rng rng(2);
  const FlowSystem sys = FlowSystem::fokker_planck(build_grid(8), Potential::quadratic(1.0), power_function(0.75));
  const VectorXd a = random_interior_state(9, rng), b = random_interior_state(9, rng);
  const GeodesicPath p = shoot(sys, a, b);
  EXPECT_EQ(p.method, "shooting");
  EXPECT_LE((p.rho.back() - b).cwiseAbs().maxCoeff(), 1e-10);
  for (double s : p.speed) EXPECT_NEAR(s, p.action, 1e-8 * p.action);
  for (const auto& psi : p.psi) EXPECT_NEAR(psi.sum(), 0.0, 1e-12);
}

TEST(Geodesic, MinimizationAgreesWithShooting) {
  Rng rng(3);
  const FlowSystem sys = FlowSystem::heat(build_grid(6), boltzmann_density());
  const VectorXd a = random_interior_state(7, rng), b = random_interior_state(7, rng);
  const GeodesicPath shot = shoot(sys, a, b);
  const GeodesicPath min = minimize_action(sys, a, b);
  EXPECT_EQ(min.method, "minimization");
  EXPECT_EQ(min.rho.size(), 65u);
  EXPECT_NEAR(min.distance(), shot.distance(), 1e-4 * shot.distance());
  EXPECT_LE((min.rho.back() - b).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Geodesic, FallsBackWhenShootingIsDisabledByIterations) {
  Rng rng(4);
  const FlowSystem sys = FlowSystem::heat(build_grid(6), power_function(1.5));
  const VectorXd a = random_interior_state(7, rng), b = random_interior_state(7, rng);
  GeodesicOptions opts;
  opts.max_newton = 0;
  const GeodesicPath p = shoot(sys, a, b, opts);
  EXPECT_EQ(p.method, "minimization");
  EXPECT_GT(p.shooting_residual, opts.tol);
}

TEST(Geodesic, ZeroToleranceFails) {
  Rng rng(5);
  const FlowSystem sys = FlowSystem::heat(build_grid(4), boltzmann_density());
  const VectorXd a = random_interior_state(5, rng), b = random_interior_state(5, rng);
  GeodesicOptions opts;
  opts.tol = 0.0;
  opts.max_minimization_iterations = 200;
  try {
    shoot(sys, a, b, opts);
    FAIL() << "expected GeodesicError";
  } catch (const GeodesicError& e) {
    EXPECT_GT(e.shooting_residual(), 0.0);
    EXPECT_GT(e.minimization_residual(), 0.0);
  }
  opts.allow_fallback = false;
  EXPECT_THROW(shoot(sys, a, b, opts), GeodesicError);
}

TEST(Geodesic, RejectsUnequalMass) {
  const FlowSystem sys = FlowSystem::heat(build_grid(4), boltzmann_density());
  EXPECT_THROW(shoot(sys, uniform_state(5), 2.0 * uniform_state(5)), ConfigurationError);
}

TEST(Verification, HeatPathIsConvex) {
  Rng rng(6);
  for (const SmoothFunction& f : {boltzmann_density(), power_function(2.0)}) {
    const FlowSystem sys = FlowSystem::heat(build_grid(8), f);
    const VerificationReport r =
        verify_displacement_convexity(sys, random_interior_state(9, rng), random_interior_state(9, rng), 0.0, 11);
    EXPECT_TRUE(r.passed()) << f.name;
    EXPECT_EQ(r.samples.size(), 11u);
    EXPECT_LE(r.worst_chord_violation, 1e-6);
    EXPECT_LE(r.worst_d2_mismatch, 1.0);
  }
}

TEST(Verification, OverlyLargeLambdaFailsDifferentialForm) {
  Rng rng(7);
  const FlowSystem sys = FlowSystem::heat(build_grid(8), boltzmann_density());
  const VectorXd a = random_interior_state(9, rng), b = random_interior_state(9, rng);
  const VerificationReport r = verify_displacement_convexity(sys, a, b, 1e6, 11);
  EXPECT_FALSE(r.differential_holds);
  EXPECT_FALSE(r.chord_holds);
  EXPECT_TRUE(r.formula_matches);
}

}  // namespace
