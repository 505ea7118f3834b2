#include "fpconvex/convexity.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "fpconvex/error.hpp"

namespace fpconvex {

namespace {

constexpr double kCertifyTolerance = 1e-12;

}  // namespace

TridiagonalMatrix assemble_heat_tilde_m(const FlowSystem& sys, const Eigen::VectorXd& rho) {
  if (!sys.phi_is_identity() || !sys.weights.potential.is_zero())
    throw ScopeError("assemble_heat_tilde_m: needs phi = id and a zero potential");
  const EdgeData e = edge_data(sys, rho);
  const Eigen::Index n = sys.edges();
  const Eigen::Index last = sys.nodes() - 1;
  auto r = [&](Eigen::Index i) { return rho[std::clamp<Eigen::Index>(i, 0, last)]; };

  TridiagonalMatrix m;
  m.scale = 1.0 / (sys.grid.h * sys.grid.h);
  m.diagonal.resize(n);
  m.off.resize(n - 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    m.diagonal[k] = 4.0 * e.mean[k] - e.d1[k] * (2.0 * r(k) - r(k - 1) - r(k + 1)) -
                    e.d2[k] * (2.0 * r(k + 1) - r(k) - r(k + 2));
    if (k + 1 < n) m.off[k] = -(e.mean[k] + e.mean[k + 1]);
  }
  return m;
}

TridiagonalMatrix assemble_fp_tilde_m(const FlowSystem& sys, const Eigen::VectorXd& rho, FpCoefficients variant) {
  const EdgeData e = edge_data(sys, rho);
  const Eigen::Index n = sys.edges();
  const auto& kappa = sys.weights.kappa;
  const auto& u = e.u;
  const auto& w = sys.weights.w;

  // Flux kappa_k (u_k - u_{k+1}) across edge k; zero outside the chain.
  auto flux = [&](Eigen::Index k) { return (k < 0 || k >= n) ? 0.0 : kappa[k] * (u[k] - u[k + 1]); };

  TridiagonalMatrix m;
  m.scale = 1.0 / (sys.grid.h * sys.grid.h);
  m.diagonal.resize(n);
  m.off.resize(n - 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double alpha = kappa[k] * e.dphi[k];
    const double beta = kappa[k] * e.dphi[k + 1];
    const double lead = variant == FpCoefficients::Derived
                            ? 2.0 * kappa[k] * e.mean[k] * (alpha + beta)
                            : 2.0 * kappa[k] * e.mean[k] * (e.dphi[k] + sys.phi.d1(rho[k + 1]) / w[k]);
    // kappa_{k-1}(u_k - u_{k-1}) + kappa_k (u_k - u_{k+1}) = -flux(k-1) + flux(k)
    const double left = -flux(k - 1) + flux(k);
    // kappa_k (u_{k+1} - u_k) + kappa_{k+1}(u_{k+1} - u_{k+2}) = -flux(k) + flux(k+1)
    const double right = -flux(k) + flux(k + 1);
    m.diagonal[k] = lead - alpha * e.d1[k] * left - beta * e.d2[k] * right;
    if (k + 1 < n) m.off[k] = -kappa[k] * kappa[k + 1] * e.dphi[k + 1] * (e.mean[k] + e.mean[k + 1]);
  }
  return m;
}

Eigen::MatrixXd dense_node_m(const FlowSystem& sys, const Eigen::VectorXd& rho) {
  require_state(sys, rho);
  const Eigen::MatrixXd g = DiscreteGradient(sys.grid).dense();
  const Eigen::MatrixXd q = sys.rates.dense();
  const Eigen::VectorXd phi = rho.unaryExpr(sys.phi.value);
  const Eigen::VectorXd xi = q * phi;
  const Eigen::VectorXd dl = dl_apply(sys, rho, xi);
  const Eigen::MatrixXd dk = g.transpose() * dl.asDiagonal() * g;
  const Eigen::MatrixXd k = onsager_dense(sys, rho);
  const Eigen::VectorXd dphi = rho.unaryExpr(sys.phi.d1);
  return dk - q * dphi.asDiagonal() * k - k * dphi.asDiagonal() * q.transpose();
}

Eigen::MatrixXd dense_tilde_m(const FlowSystem& sys, const Eigen::VectorXd& rho) {
  const Eigen::MatrixXd g = DiscreteGradient(sys.grid).dense();
  const Eigen::MatrixXd m = dense_node_m(sys, rho);
  // G has full row rank, so G^+ = G^T (G G^T)^{-1} and G G^+ = I.
  const Eigen::MatrixXd ggt = g * g.transpose();
  const Eigen::MatrixXd pinv = g.transpose() * ggt.ldlt().solve(Eigen::MatrixXd::Identity(g.rows(), g.rows()));
  Eigen::MatrixXd out = pinv.transpose() * m * pinv;
  return 0.5 * (out + out.transpose());
}

TridiagonalMatrix assemble_quotient_tilde_m(const SmoothFunction& phi, const MeanFunction& mean, const Eigen::VectorXd& rho,
                                      double h) {
  const Eigen::Index m = rho.size();
  const Eigen::Index n = m - 1;
  if (n < 2) throw ConfigurationError("assemble_quotient_tilde_m: need at least three nodes");
  if (!(h > 0.0)) throw ConfigurationError("assemble_quotient_tilde_m: h must be positive");
  for (Eigen::Index i = 0; i < m; ++i)
    if (!(rho[i] > 0.0) || !std::isfinite(rho[i])) throw DomainError("assemble_quotient_tilde_m: nonpositive state");

  const Eigen::VectorXd p = rho.unaryExpr(phi.value);
  const Eigen::VectorXd dp = rho.unaryExpr(phi.d1);
  auto pg = [&](Eigen::Index i) { return p[std::clamp<Eigen::Index>(i, 0, n)]; };
  Eigen::VectorXd lam(n), d1(n), d2(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    lam[k] = mean(rho[k], rho[k + 1]);
    const MeanPartials pk = mean.partials(rho[k], rho[k + 1]);
    d1[k] = pk.d1;
    d2[k] = pk.d2;
  }
  TridiagonalMatrix out;
  out.scale = 1.0 / (h * h);
  out.diagonal.resize(n);
  out.off.resize(n - 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.diagonal[k] = 2.0 * lam[k] * (dp[k] + dp[k + 1]) + d1[k] * (pg(k - 1) - 2.0 * pg(k) + pg(k + 1)) +
                      d2[k] * (pg(k) - 2.0 * pg(k + 1) + pg(k + 2));
    if (k + 1 < n) out.off[k] = -dp[k + 1] * (lam[k] + lam[k + 1]);
  }
  return out;
}

double lambda_h(const FlowSystem& sys, const Eigen::VectorXd& rho) {
  const Potential& v = sys.weights.potential;
  if (v.kind == Potential::Kind::Custom) throw ScopeError("lambda_h: only defined for quadratic potentials");
  require_state(sys, rho);
  const double gamma = v.kind == Potential::Kind::Quadratic ? v.gamma : 0.0;
  if (gamma == 0.0) return 0.0;
  const double h = sys.grid.h;
  const Eigen::VectorXd dphi = rho.unaryExpr(sys.phi.d1);
  const Eigen::Index n = sys.edges();
  const double max_grad = (dphi.tail(n) - dphi.head(n)).cwiseAbs().maxCoeff() / h;
  const double x = 0.5 * gamma * h * h;
  const double g = -std::expm1(-x) / x;
  return gamma * (g * dphi.minCoeff() - 2.0 * std::cosh(gamma * h) * max_grad);
}

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::DominanceCertified:
      return "DominanceCertified";
    case Certificate::EigenvalueCertified:
      return "EigenvalueCertified";
    case Certificate::NotPSD:
      return "NotPSD";
  }
  return "NotPSD";
}

ConvexityReport certify(const TridiagonalMatrix& tilde_m, const Eigen::VectorXd& L, double lambda) {
  const Eigen::Index n = tilde_m.size();
  if (L.size() != n) throw SizeMismatchError("certify: L and ~M have different sizes");
  if (tilde_m.off.size() != std::max<Eigen::Index>(n - 1, 0)) throw SizeMismatchError("certify: malformed ~M");
  if (n == 0) throw SizeMismatchError("certify: empty matrix");

  ConvexityReport report;
  report.lambda = lambda;

  // Coefficient-level matrix T - (lambda / scale) diag(L).
  const Eigen::VectorXd diag = tilde_m.diagonal - (lambda / tilde_m.scale) * L;
  const Eigen::VectorXd& off = tilde_m.off;

  double magnitude = 0.0;
  double margin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = 0.0;
    if (i > 0) row += std::abs(off[i - 1]);
    if (i + 1 < n) row += std::abs(off[i]);
    margin = std::min(margin, diag[i] - row);
    magnitude = std::max({magnitude, std::abs(tilde_m.diagonal[i]), row, std::abs(lambda * L[i] / tilde_m.scale)});
  }
  report.dominance_margin = margin;
  const double tol = kCertifyTolerance * std::max(magnitude, std::numeric_limits<double>::min());

  const EigenBracket bracket = smallest_eigenvalue(diag, off);
  report.smallest_eigenvalue = tilde_m.scale * bracket.value();

  if (margin >= -tol) {
    report.certificate = Certificate::DominanceCertified;
  } else if (bracket.upper >= -tol) {
    report.certificate = Certificate::EigenvalueCertified;
  } else {
    report.certificate = Certificate::NotPSD;
    report.witness = smallest_eigenvector(diag, off, bracket);
    TridiagonalMatrix shifted{diag, off, tilde_m.scale};
    report.witness_value = report.witness.dot(shifted.apply(report.witness));
  }
  return report;
}

TridiagonalMatrix assemble_tilde_m(const FlowSystem& sys, const Eigen::VectorXd& rho) {
  if (sys.path == FlowSystem::Path::Heat) return assemble_heat_tilde_m(sys, rho);
  return assemble_fp_tilde_m(sys, rho);
}

double second_derivative_formula(const FlowSystem& sys, const Eigen::VectorXd& rho, const Eigen::VectorXd& psi) {
  if (psi.size() != sys.nodes()) throw SizeMismatchError("second_derivative_formula: psi has the wrong size");
  const Eigen::VectorXd gpsi = DiscreteGradient(sys.grid).apply(psi);
  return 0.5 * gpsi.dot(assemble_tilde_m(sys, rho).apply(gpsi));
}

}  // namespace fpconvex
