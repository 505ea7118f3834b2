#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace fpconvex {

struct IntegratorOptions {
  double atol = 1e-9;
  double rtol = 1e-9;
  double initial_step = 0.0;  // 0 selects a step from the initial derivative
  double min_step = 1e-14;    // relative to the integration interval
  std::size_t max_steps = 5'000'000;
};

/// dy/dt = f(t, y). The right-hand side may throw DomainError for states it
/// cannot evaluate; the integrator treats that like an inadmissible state.
using OdeRhs = std::function<Eigen::VectorXd(double t, const Eigen::VectorXd& y)>;

/// Returns false for states that must be rejected (e.g. a nonpositive density).
using StateGuard = std::function<bool(const Eigen::VectorXd& y)>;

struct OdeSolution {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t guard_rejections = 0;
};

/// Dormand-Prince 5(4) with PI-free classic step control.
///
/// The solution is recorded exactly at `sample_times` (which must be
/// nondecreasing and inside [t0, t_end]); steps are clipped to land on them.
/// A step whose result fails `guard` (or whose stages throw DomainError) is
/// rejected and the step halved. Throws IntegrationError when the step falls
/// below `min_step * (t_end - t0)` or `max_steps` is exhausted.
OdeSolution integrate_dopri5(const OdeRhs& rhs, const Eigen::VectorXd& y0, double t0,
                             const std::vector<double>& sample_times, const IntegratorOptions& options,
                             const StateGuard& guard = {});

/// Classic fixed-step fourth-order Runge-Kutta; returns the states at all
/// `steps + 1` equispaced times in [t0, t1].
std::vector<Eigen::VectorXd> integrate_rk4(const OdeRhs& rhs, const Eigen::VectorXd& y0, double t0,
                                           double t1, int steps);

}  // namespace fpconvex
