#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "fpconvex/integrator.hpp"
#include "fpconvex/markov.hpp"
#include "fpconvex/means.hpp"
#include "fpconvex/report.hpp"

namespace fpconvex {

/// Discrete gradient flow d/dt rho = Q phi(rho) = -K(rho) DE(rho).
///
/// Two settings share the same edge structure, with u_i = phi(rho_i) / w_i,
/// edge weights L_k = kappa_k Lambda(u_k, u_{k+1}) and DE_i = f'(u_i):
///  - FokkerPlanck: any nonlinearity phi and potential, f the Boltzmann
///    density and Lambda the logarithmic mean;
///  - Heat: phi = id and V = 0, a general convex f with Lambda = Lambda^f.
struct FlowSystem {
  enum class Path { FokkerPlanck, Heat };

  Path path = Path::FokkerPlanck;
  Grid grid;
  Weights weights;
  RateMatrix rates;
  SmoothFunction phi;
  SmoothFunction f;
  MeanFunction mean = MeanFunction::logarithmic();

  static FlowSystem fokker_planck(const Grid& grid, const Potential& potential, SmoothFunction phi);
  static FlowSystem heat(const Grid& grid, SmoothFunction f);

  Eigen::Index nodes() const noexcept { return grid.nodes(); }
  Eigen::Index edges() const noexcept { return grid.edges(); }
  bool phi_is_identity() const noexcept { return phi.family == SmoothFunction::Family::Identity; }
};

/// Throws SizeMismatchError / DomainError unless rho has n+1 positive finite entries.
void require_state(const FlowSystem& sys, const Eigen::VectorXd& rho);

/// Edge-level quantities at one state.
struct EdgeData {
  Eigen::VectorXd u;       // phi(rho_i) / w_i, n+1 entries
  Eigen::VectorXd dphi;    // phi'(rho_i) / w_i, n+1 entries
  Eigen::VectorXd mean;    // Lambda(u_k, u_{k+1}), n entries
  Eigen::VectorXd d1;      // d1 Lambda(u_k, u_{k+1})
  Eigen::VectorXd d2;      // d2 Lambda(u_k, u_{k+1})
  Eigen::VectorXd weight;  // L_k = kappa_k Lambda(u_k, u_{k+1})
};

EdgeData edge_data(const FlowSystem& sys, const Eigen::VectorXd& rho, bool with_partials = true);

double entropy(const FlowSystem& sys, const Eigen::VectorXd& rho);
Eigen::VectorXd entropy_gradient(const FlowSystem& sys, const Eigen::VectorXd& rho);

/// Diagonal of L(rho).
Eigen::VectorXd edge_weights(const FlowSystem& sys, const Eigen::VectorXd& rho);
/// K(rho) psi = G^T L(rho) G psi.
Eigen::VectorXd onsager_apply(const FlowSystem& sys, const Eigen::VectorXd& rho, const Eigen::VectorXd& psi);
Eigen::MatrixXd onsager_dense(const FlowSystem& sys, const Eigen::VectorXd& rho);
/// Diagonal of DL(rho)[xi] (n entries).
Eigen::VectorXd dl_apply(const FlowSystem& sys, const Eigen::VectorXd& rho, const Eigen::VectorXd& xi);

/// Q phi(rho).
Eigen::VectorXd rhs(const FlowSystem& sys, const Eigen::VectorXd& rho);

/// Discrete l2 norm of the gradient of phi(rho): (sum_k h |(phi_{k+1} - phi_k) / h|^2)^{1/2}.
double gradient_norm(const FlowSystem& sys, const Eigen::VectorXd& rho);

/// phi' nonincreasing on [lo, hi], checked on 257 log-spaced samples. For an
/// increasing phi this is the same as phi' o phi^{-1} being nonincreasing.
bool phi_prime_nonincreasing(const SmoothFunction& phi, double lo, double hi);

struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::vector<double> entropy;
  std::vector<double> min_rho;
  std::vector<double> max_rho;
  std::vector<double> grad_norm;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

struct FlowOptions {
  double tol = 1e-9;            // absolute and relative integrator tolerance
  std::size_t samples = 101;    // output times, including 0 and t_end
};

Trajectory integrate(const FlowSystem& sys, const Eigen::VectorXd& rho0, double t_end,
                     const FlowOptions& options = {});

/// Checks the a priori estimates along a trajectory of the V = 0 flow:
///  - max_principle:            min rho(0) <= rho_i(t) <= max rho(0)
///  - gradient_linf_bound:      max |grad_h phi(rho(t))| <= h^{-1/2} |grad_h phi(rho(0))|_2
///  - gradient_l2_decay:        sum_k (phi_{k+1} - phi_k)^2 nonincreasing between samples
///  - phi_prime_gradient_bound: max |grad_h phi'(rho)| <= h^{-1/2} C |grad_h rho(0)|_2 with
///                              C = max |phi''/phi'| over [phi^{-1}(m), phi^{-1}(M)]
/// and, for phi(s) = s^alpha with alpha in (0, 1):
///  - power_min_phi_prime_upper: min phi'(rho) <= M^{alpha-1}
///  - power_min_phi_prime_lower: min phi'(rho) >= alpha M^{alpha-1}
///  - power_phi_prime_gradient:  max |grad_h phi'(rho)| <= (1-alpha) m^{-2/alpha} h^{-1/2} |grad_h rho(0)|_2
/// Each result's residual is the worst excess over the bound. Throws
/// ScopeError for a nonzero potential.
PropertyReport apriori_monitor(const FlowSystem& sys, const Trajectory& trajectory, double slack = 1e-8);

}  // namespace fpconvex
