#pragma once

#include <string>

#include <Eigen/Core>

#include "fpconvex/flow.hpp"
#include "fpconvex/means.hpp"
#include "fpconvex/tridiagonal.hpp"

namespace fpconvex {

/// Edge-space matrix ~M of the heat scheme (phi = id, V = 0, general f):
///   a_k = 4 L_k - d1L_k (2 r_k - r_{k-1} - r_{k+1}) - d2L_k (2 r_{k+1} - r_k - r_{k+2})
///   b_k = -(L_k + L_{k+1})
/// with L_k = Lambda^f(r_k, r_{k+1}) and r_{-1} = r_0, r_{n+1} = r_n.
/// Throws ScopeError unless the system has phi = id and a zero potential.
TridiagonalMatrix assemble_heat_tilde_m(const FlowSystem& sys, const Eigen::VectorXd& rho);

/// Which reading of the Fokker-Planck diagonal coefficient to use.
enum class FpCoefficients {
  /// 2 kappa_k L_k (alpha_k + beta_k) with alpha_k = kappa_k phi'_k / w_k and
  /// beta_k = kappa_k phi'_{k+1} / w_{k+1}; agrees with the dense assembly.
  Derived,
  /// 2 kappa_k L_k (phi'_k / w_k + phi'_{k+1} / w_k), the literal display.
  /// Kept to show that it disagrees with the dense assembly when V != 0.
  AsPrinted,
};

/// Edge-space matrix ~M = DL[Q phi] + diag(kappa) G D G^T L + L G D G^T diag(kappa),
/// D = diag(phi'(rho) / w), in closed form:
///   a_k = 2 kappa_k L_k (alpha_k + beta_k)
///         - alpha_k d1L_k (kappa_{k-1}(u_k - u_{k-1}) + kappa_k (u_k - u_{k+1}))
///         - beta_k  d2L_k (kappa_k (u_{k+1} - u_k) + kappa_{k+1}(u_{k+1} - u_{k+2}))
///   b_k = -kappa_k kappa_{k+1} phi'_{k+1} / w_{k+1} (L_k + L_{k+1})
/// where fluxes across the two ends of the chain are zero.
TridiagonalMatrix assemble_fp_tilde_m(const FlowSystem& sys, const Eigen::VectorXd& rho,
                                      FpCoefficients variant = FpCoefficients::Derived);

/// The same matrix from node-space algebra: builds
///   M = DK[Q phi] - Q Phi' K - K Phi' Q^T,  DK[xi] = G^T DL[xi] G,
/// densely and recovers ~M = (G^+)^T M G^+. Independent of the closed forms.
Eigen::MatrixXd dense_tilde_m(const FlowSystem& sys, const Eigen::VectorXd& rho);

/// Node-space M(rho) (see dense_tilde_m).
Eigen::MatrixXd dense_node_m(const FlowSystem& sys, const Eigen::VectorXd& rho);

/// Edge-space matrix for the scheme d/dt rho = -K U'(rho) with edge mean
/// Lambda(rho_k, rho_{k+1}) (w = 1):
///   d_k = 2 L_k (phi'_k + phi'_{k+1}) + d1L_k (phi_{k-1} - 2 phi_k + phi_{k+1})
///         + d2L_k (phi_k - 2 phi_{k+1} + phi_{k+2})
///   c_k = -phi'_{k+1} (L_k + L_{k+1})
/// with reflected ghosts phi_{-1} = phi_0, phi_{n+1} = phi_n.
TridiagonalMatrix assemble_quotient_tilde_m(const SmoothFunction& phi, const MeanFunction& mean,
                                      const Eigen::VectorXd& rho, double h);

/// gamma (g(gamma h^2 / 2) min phi'(rho) - 2 cosh(gamma h) max_k |phi'(rho_{k+1}) - phi'(rho_k)| / h),
/// g(x) = (1 - e^{-x}) / x. Zero for a zero potential; ScopeError for a custom one.
double lambda_h(const FlowSystem& sys, const Eigen::VectorXd& rho);

enum class Certificate { DominanceCertified, EigenvalueCertified, NotPSD };
std::string to_string(Certificate c);

struct ConvexityReport {
  double lambda = 0.0;
  /// min_k (a_k - |b_{k-1}| - |b_k| - lambda L_k / scale), in the units of the coefficients.
  double dominance_margin = 0.0;
  /// Smallest eigenvalue of scale * T - lambda diag(L).
  double smallest_eigenvalue = 0.0;
  Certificate certificate = Certificate::NotPSD;
  /// For NotPSD: unit vector v with <(~M - lambda L) v, v> < 0.
  Eigen::VectorXd witness;
  double witness_value = 0.0;

  bool certified() const noexcept { return certificate != Certificate::NotPSD; }
};

/// Decides whether ~M - lambda diag(L) is positive semidefinite: first by
/// diagonal dominance, then by the smallest eigenvalue. Tolerances are
/// relative (1e-12 of the matrix magnitude).
ConvexityReport certify(const TridiagonalMatrix& tilde_m, const Eigen::VectorXd& L, double lambda);

/// 1/2 <~M G psi, G psi> with the closed-form ~M of the system's path.
double second_derivative_formula(const FlowSystem& sys, const Eigen::VectorXd& rho, const Eigen::VectorXd& psi);

/// Closed-form ~M appropriate to the system (heat formula for the heat path,
/// Fokker-Planck formula otherwise).
TridiagonalMatrix assemble_tilde_m(const FlowSystem& sys, const Eigen::VectorXd& rho);

}  // namespace fpconvex
