#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fpconvex/flow.hpp"

namespace fpconvex {

/// Time derivatives of the geodesic equations
///   d/dt rho = K(rho) psi,  d/dt psi_v = -1/2 <DK(rho)[e_v] psi, psi>.
struct GeodesicVelocity {
  Eigen::VectorXd rho;
  Eigen::VectorXd psi;
};

GeodesicVelocity geodesic_rhs(const FlowSystem& sys, const Eigen::VectorXd& rho, const Eigen::VectorXd& psi);

/// H(rho, psi) = 1/2 <K(rho) psi, psi>.
double hamiltonian(const FlowSystem& sys, const Eigen::VectorXd& rho, const Eigen::VectorXd& psi);

struct GeodesicOptions {
  double tol = 1e-10;             // target for max |rho(1) - rho1|
  int steps = 256;                // RK4 steps on [0, 1] for shooting
  int max_newton = 50;
  double jacobian_step = 1e-7;    // forward-difference step, relative to |psi0|
  bool allow_fallback = true;
  int coarse_slices = 32;         // 33 time samples
  int fine_slices = 64;           // 65 time samples
  int max_minimization_iterations = 20000;
  /// Stationarity target for the minimization, max |projected gradient| / dt.
  /// Negative means 1e3 * tol.
  double minimization_tol = -1.0;
};

struct GeodesicPath {
  Eigen::VectorXd rho0;
  Eigen::VectorXd rho1;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> rho;
  std::vector<Eigen::VectorXd> psi;  // centred (sum zero) at every sample
  std::vector<double> speed;         // <K(rho) psi, psi> at every sample
  double action = 0.0;               // integral of the speed over [0, 1]
  double residual = 0.0;             // max |rho(1) - rho1| (shooting) or gradient norm (minimization)
  std::string method;                // "trivial", "shooting" or "minimization"
  int iterations = 0;
  double shooting_residual = 0.0;

  double distance() const { return std::sqrt(std::max(action, 0.0)); }
};

/// Solves the two-point problem by Newton shooting on psi(0) (gauge
/// sum psi(0) = 0) and falls back to direct minimization of the discrete
/// action over piecewise-linear paths. Throws GeodesicError when neither
/// reaches its tolerance.
GeodesicPath shoot(const FlowSystem& sys, const Eigen::VectorXd& rho0, const Eigen::VectorXd& rho1,
                   const GeodesicOptions& options = {});

/// Direct action minimization only (also used as the fallback of shoot).
GeodesicPath minimize_action(const FlowSystem& sys, const Eigen::VectorXd& rho0, const Eigen::VectorXd& rho1,
                             const GeodesicOptions& options = {});

/// W(rho0, rho1) = sqrt(action) of the path returned by shoot.
double distance(const FlowSystem& sys, const Eigen::VectorXd& rho0, const Eigen::VectorXd& rho1,
                const GeodesicOptions& options = {});

struct VerificationSample {
  double t = 0.0;
  double entropy = 0.0;
  double chord_bound = 0.0;        // (1-t) E0 + t E1 - lambda/2 t (1-t) W^2
  double d2_finite_difference = std::numeric_limits<double>::quiet_NaN();
  double d2_formula = std::numeric_limits<double>::quiet_NaN();
  double speed = 0.0;
};

struct VerificationReport {
  double lambda = 0.0;
  double distance = 0.0;
  double action = 0.0;
  std::string method;
  double boundary_residual = 0.0;
  std::vector<VerificationSample> samples;

  double worst_chord_violation = 0.0;   // max (E(t) - chord bound), <= 0 when the inequality holds
  double worst_d2_violation = 0.0;      // max (lambda W^2 - d2E/dt^2)
  double worst_d2_mismatch = 0.0;       // max |fd - formula| / max(1e-4 |formula|, 1e-7)
  double speed_deviation = 0.0;         // max |speed - action| / action

  bool chord_holds = false;
  bool differential_holds = false;
  bool formula_matches = false;
  bool constant_speed = false;
  bool passed() const noexcept { return chord_holds && differential_holds && formula_matches && constant_speed; }
};

struct VerificationOptions {
  double chord_slack = 1e-6;
  double d2_slack = 1e-6;
  double speed_tolerance = 1e-3;
  double fd_step = 2e-3;   // local geodesic step for the entropy second difference
  int fd_substeps = 16;    // RK4 steps per local step
};

/// Solves the geodesic and checks, at `samples` equispaced interior and end
/// times, the chord inequality, the differential form d2E/dt2 >= lambda W^2
/// (by Richardson-extrapolated central differences of E along the geodesic),
/// agreement of that difference with second_derivative_formula, and
/// constancy of the speed.
VerificationReport verify_displacement_convexity(const FlowSystem& sys, const Eigen::VectorXd& rho0,
                                                 const Eigen::VectorXd& rho1, double lambda, int samples,
                                                 const GeodesicOptions& geodesic = {},
                                                 const VerificationOptions& options = {});

/// Same checks on an already computed path.
VerificationReport verify_path(const FlowSystem& sys, const GeodesicPath& path, double lambda, int samples,
                               const VerificationOptions& options = {});

}  // namespace fpconvex
