#include "fpconvex/geodesics.hpp"

#include <deque>

#include <Eigen/Dense>

#include "fpconvex/convexity.hpp"
#include "fpconvex/error.hpp"
#include "fpconvex/tridiagonal.hpp"

namespace fpconvex {

namespace {

using Eigen::Index;
using Eigen::VectorXd;

VectorXd centred(const VectorXd& psi) { return psi.array() - psi.mean(); }

bool all_positive_finite(const VectorXd& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (!(v[i] > 0.0) || !std::isfinite(v[i])) return false;
  return true;
}

/// Node potential with prescribed discrete gradient g (n entries), centred.
VectorXd potential_from_gradient(const VectorXd& g, double h) {
  VectorXd psi(g.size() + 1);
  psi[0] = 0.0;
  for (Index k = 0; k < g.size(); ++k) psi[k + 1] = psi[k] - h * g[k];
  return centred(psi);
}

/// Edge fluxes J with G^T J = drho: J_e = h sum_{i <= e} drho_i.
VectorXd edge_flux(const VectorXd& drho, double h) {
  VectorXd j(drho.size() - 1);
  double acc = 0.0;
  for (Index e = 0; e < j.size(); ++e) {
    acc += drho[e];
    j[e] = h * acc;
  }
  return j;
}

struct PhaseState {
  VectorXd rho;
  VectorXd psi;
};

PhaseState rk4_step(const FlowSystem& sys, const PhaseState& y, double dt) {
  auto f = [&](const VectorXd& r, const VectorXd& p) {
    if (!all_positive_finite(r) || !p.allFinite()) throw DomainError("geodesic: state left the positive cone");
    return geodesic_rhs(sys, r, p);
  };
  const GeodesicVelocity k1 = f(y.rho, y.psi);
  const GeodesicVelocity k2 = f(y.rho + 0.5 * dt * k1.rho, y.psi + 0.5 * dt * k1.psi);
  const GeodesicVelocity k3 = f(y.rho + 0.5 * dt * k2.rho, y.psi + 0.5 * dt * k2.psi);
  const GeodesicVelocity k4 = f(y.rho + dt * k3.rho, y.psi + dt * k3.psi);
  PhaseState out{y.rho + dt / 6.0 * (k1.rho + 2.0 * k2.rho + 2.0 * k3.rho + k4.rho),
                 y.psi + dt / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi)};
  if (!all_positive_finite(out.rho) || !out.psi.allFinite())
    throw DomainError("geodesic: state left the positive cone");
  return out;
}

/// Integrates the geodesic equations over [0, span] with `steps` RK4 steps
/// (span may be negative). Returns all states when `record` is set, else
/// only the final one.
std::vector<PhaseState> integrate_geodesic(const FlowSystem& sys, const PhaseState& y0, double span, int steps,
                                           bool record) {
  std::vector<PhaseState> out;
  out.push_back(y0);
  PhaseState y = y0;
  const double dt = span / steps;
  for (int s = 0; s < steps; ++s) {
    y = rk4_step(sys, y, dt);
    if (record) out.push_back(y);
  }
  if (!record) out.back() = y;
  return out;
}

VectorXd full_psi(const VectorXd& z) {
  VectorXd psi(z.size() + 1);
  psi.head(z.size()) = z;
  psi[z.size()] = -z.sum();
  return psi;
}

VectorXd shooting_residual(const FlowSystem& sys, const VectorXd& rho0, const VectorXd& rho1, const VectorXd& z,
                           int steps) {
  const auto end = integrate_geodesic(sys, {rho0, full_psi(z)}, 1.0, steps, false).back();
  return end.rho - rho1;
}

double simpson(const std::vector<double>& values, double dt) {
  const std::size_t m = values.size() - 1;
  if (m == 0) return 0.0;
  if (m % 2 != 0) {
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t i = 1; i < m; ++i) sum += values[i];
    return sum * dt;
  }
  double sum = values.front() + values.back();
  for (std::size_t i = 1; i < m; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
  return sum * dt / 3.0;
}

void validate_endpoints(const FlowSystem& sys, const VectorXd& rho0, const VectorXd& rho1) {
  require_state(sys, rho0);
  require_state(sys, rho1);
  const double m0 = rho0.sum();
  const double m1 = rho1.sum();
  if (std::abs(m0 - m1) > 1e-12 * std::max(std::abs(m0), std::abs(m1)))
    throw ConfigurationError("geodesic: endpoints must have equal mass");
}

GeodesicPath trivial_path(const FlowSystem& sys, const VectorXd& rho0, const VectorXd& rho1) {
  GeodesicPath path;
  path.rho0 = rho0;
  path.rho1 = rho1;
  path.method = "trivial";
  path.times = {0.0, 1.0};
  path.rho = {rho0, rho0};
  path.psi = {VectorXd::Zero(sys.nodes()), VectorXd::Zero(sys.nodes())};
  path.speed = {0.0, 0.0};
  return path;
}

double minimization_target(const GeodesicOptions& options) {
  return options.minimization_tol >= 0.0 ? options.minimization_tol : 1e3 * options.tol;
}

/// Discrete action of a piecewise-linear path with K + 1 slices:
///   S = sum_k dt sum_e J_e^2 / L_e(midpoint),  J = (h / dt) cumsum(rho_{k+1} - rho_k).
/// Also returns dS / d rho for every slice.
struct ActionValue {
  double value = 0.0;
  std::vector<VectorXd> gradient;
};

ActionValue evaluate_action(const FlowSystem& sys, const std::vector<VectorXd>& slices, double dt) {
  const double h = sys.grid.h;
  const Index m = sys.nodes();
  const Index n = sys.edges();
  const std::size_t count = slices.size();
  ActionValue out;
  out.gradient.assign(count, VectorXd::Zero(m));
  for (std::size_t k = 0; k + 1 < count; ++k) {
    const VectorXd mid = 0.5 * (slices[k] + slices[k + 1]);
    const EdgeData e = edge_data(sys, mid);
    const VectorXd j = edge_flux(slices[k + 1] - slices[k], h) / dt;
    const VectorXd ratio = j.cwiseQuotient(e.weight);
    out.value += dt * j.dot(ratio);

    // Through J: dS/d rho_{k+1, i} = 2 h sum_{e >= i} J_e / L_e, opposite sign for rho_k.
    double tail = 0.0;
    for (Index i = n; i >= 0; --i) {
      if (i < n) tail += ratio[i];
      out.gradient[k + 1][i] += 2.0 * h * tail;
      out.gradient[k][i] -= 2.0 * h * tail;
    }
    // Through L(midpoint): dS/dL_e = -dt (J_e / L_e)^2.
    const auto& kappa = sys.weights.kappa;
    for (Index q = 0; q < n; ++q) {
      const double c = -dt * ratio[q] * ratio[q];
      const double g0 = c * kappa[q] * e.d1[q] * e.dphi[q];
      const double g1 = c * kappa[q] * e.d2[q] * e.dphi[q + 1];
      out.gradient[k][q] += 0.5 * g0;
      out.gradient[k + 1][q] += 0.5 * g0;
      out.gradient[k][q + 1] += 0.5 * g1;
      out.gradient[k + 1][q + 1] += 0.5 * g1;
    }
  }
  return out;
}

/// Interior slices in cumulative-mass coordinates F_e = sum_{i <= e} rho_i,
/// e = 0..n-1 (F_n is the fixed mass). The mass constraint disappears and the
/// action is a weighted sum of squared time differences of F.
VectorXd pack(const std::vector<VectorXd>& slices) {
  const Index n = slices.front().size() - 1;
  VectorXd x(static_cast<Index>(slices.size() - 2) * n);
  for (std::size_t k = 1; k + 1 < slices.size(); ++k) {
    double acc = 0.0;
    for (Index e = 0; e < n; ++e) {
      acc += slices[k][e];
      x[static_cast<Index>(k - 1) * n + e] = acc;
    }
  }
  return x;
}

void unpack(const VectorXd& x, double mass, std::vector<VectorXd>& slices) {
  const Index n = slices.front().size() - 1;
  for (std::size_t k = 1; k + 1 < slices.size(); ++k) {
    double prev = 0.0;
    for (Index e = 0; e < n; ++e) {
      const double f = x[static_cast<Index>(k - 1) * n + e];
      slices[k][e] = f - prev;
      prev = f;
    }
    slices[k][n] = mass - prev;
  }
}

/// Gradient in cumulative-mass coordinates: dS/dF_e = dS/drho_e - dS/drho_{e+1}.
VectorXd cumulative_gradient(const ActionValue& a) {
  const std::size_t count = a.gradient.size();
  const Index n = a.gradient.front().size() - 1;
  VectorXd g(static_cast<Index>(count - 2) * n);
  for (std::size_t k = 1; k + 1 < count; ++k)
    for (Index e = 0; e < n; ++e)
      g[static_cast<Index>(k - 1) * n + e] = a.gradient[k][e] - a.gradient[k][e + 1];
  return g;
}

/// max over interior slices of |dS/drho - mean| / dt.
double stationarity(const ActionValue& a, double dt) {
  double out = 0.0;
  for (std::size_t k = 1; k + 1 < a.gradient.size(); ++k)
    out = std::max(out, centred(a.gradient[k]).cwiseAbs().maxCoeff());
  return out / dt;
}

/// Applies the inverse of the quadratic part of the action with frozen
/// weights: per edge, a tridiagonal operator in time with entries
/// (2 h^2 / dt) (1/L_{k-1/2} + 1/L_{k+1/2}) and -(2 h^2 / dt) / L_{k+1/2}.
VectorXd precondition(const FlowSystem& sys, const std::vector<VectorXd>& slices, const VectorXd& g) {
  const std::size_t count = slices.size();
  const Index interior = static_cast<Index>(count - 2);
  const Index n = sys.edges();
  const double dt = 1.0 / static_cast<double>(count - 1);
  const double c = 2.0 * sys.grid.h * sys.grid.h / dt;
  std::vector<VectorXd> inv_l;
  for (std::size_t k = 0; k + 1 < count; ++k)
    inv_l.push_back(edge_weights(sys, 0.5 * (slices[k] + slices[k + 1])).cwiseInverse());
  VectorXd out(g.size());
  VectorXd diag(interior), off(std::max<Index>(interior - 1, 0)), rhs(interior);
  for (Index e = 0; e < n; ++e) {
    for (Index k = 0; k < interior; ++k) {
      diag[k] = c * (inv_l[k][e] + inv_l[k + 1][e]);
      if (k + 1 < interior) off[k] = -c * inv_l[k + 1][e];
      rhs[k] = g[k * n + e];
    }
    const VectorXd sol = thomas_solve(diag, off, rhs);
    for (Index k = 0; k < interior; ++k) out[k * n + e] = sol[k];
  }
  return out;
}

struct MinimizationResult {
  std::vector<VectorXd> slices;
  double action = 0.0;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

bool slices_positive(const std::vector<VectorXd>& slices) {
  for (const auto& s : slices)
    if (!all_positive_finite(s)) return false;
  return true;
}

MinimizationResult lbfgs(const FlowSystem& sys, std::vector<VectorXd> slices, double target, int max_iterations) {
  const double dt = 1.0 / static_cast<double>(slices.size() - 1);
  const double mass = slices.front().sum();
  constexpr std::size_t kMemory = 12;

  MinimizationResult result;
  ActionValue a = evaluate_action(sys, slices, dt);
  if (slices.size() <= 2) {
    result.slices = slices;
    result.action = a.value;
    result.residual = 0.0;
    result.converged = true;
    return result;
  }

  VectorXd x = pack(slices);
  VectorXd g = cumulative_gradient(a);
  std::deque<std::pair<VectorXd, VectorXd>> memory;

  int it = 0;
  for (; it < max_iterations; ++it) {
    result.residual = stationarity(a, dt);
    if (result.residual <= target) {
      result.converged = true;
      break;
    }
    // Two-loop recursion with the frozen-weight quadratic as initial Hessian.
    VectorXd q = g;
    std::vector<double> alphas(memory.size());
    for (std::size_t i = memory.size(); i-- > 0;) {
      const auto& [s, y] = memory[i];
      alphas[i] = s.dot(q) / y.dot(s);
      q -= alphas[i] * y;
    }
    q = precondition(sys, slices, q);
    for (std::size_t i = 0; i < memory.size(); ++i) {
      const auto& [s, y] = memory[i];
      const double beta = y.dot(q) / y.dot(s);
      q += (alphas[i] - beta) * s;
    }
    VectorXd d = -q;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      memory.clear();
      d = -precondition(sys, slices, g);
      slope = g.dot(d);
      if (!(slope < 0.0)) break;
    }

    double step = 1.0;
    bool accepted = false;
    std::vector<VectorXd> trial = slices;
    ActionValue trial_value;
    for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
      unpack(x + step * d, mass, trial);
      if (!slices_positive(trial)) continue;
      try {
        trial_value = evaluate_action(sys, trial, dt);
      } catch (const DomainError&) {
        continue;
      }
      if (trial_value.value <= a.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;

    const VectorXd x_new = x + step * d;
    const VectorXd g_new = cumulative_gradient(trial_value);
    const VectorXd s = x_new - x;
    const VectorXd y = g_new - g;
    if (s.dot(y) > 1e-16 * s.norm() * y.norm()) {
      memory.emplace_back(s, y);
      if (memory.size() > kMemory) memory.pop_front();
    }
    x = x_new;
    slices = trial;
    a = trial_value;
    g = g_new;
  }
  result.slices = slices;
  result.action = a.value;
  result.iterations = it;
  if (!result.converged) result.residual = stationarity(a, dt);
  return result;
}

std::vector<VectorXd> linear_slices(const VectorXd& rho0, const VectorXd& rho1, int count) {
  std::vector<VectorXd> out;
  for (int k = 0; k <= count; ++k) {
    const double t = static_cast<double>(k) / count;
    out.push_back((1.0 - t) * rho0 + t * rho1);
  }
  return out;
}

std::vector<VectorXd> refine_slices(const std::vector<VectorXd>& coarse, int count) {
  const int coarse_count = static_cast<int>(coarse.size()) - 1;
  std::vector<VectorXd> out;
  for (int k = 0; k <= count; ++k) {
    const double pos = static_cast<double>(k) * coarse_count / count;
    const int lo = std::min(static_cast<int>(std::floor(pos)), coarse_count - 1);
    const double frac = pos - lo;
    out.push_back((1.0 - frac) * coarse[lo] + frac * coarse[lo + 1]);
  }
  return out;
}

GeodesicPath path_from_slices(const FlowSystem& sys, const MinimizationResult& r) {
  const double h = sys.grid.h;
  const std::size_t count = r.slices.size();
  const double dt = 1.0 / static_cast<double>(count - 1);
  std::vector<VectorXd> fluxes;
  for (std::size_t k = 0; k + 1 < count; ++k) fluxes.push_back(edge_flux(r.slices[k + 1] - r.slices[k], h) / dt);

  GeodesicPath path;
  path.rho0 = r.slices.front();
  path.rho1 = r.slices.back();
  path.method = "minimization";
  path.action = r.action;
  path.residual = r.residual;
  path.iterations = r.iterations;
  for (std::size_t k = 0; k < count; ++k) {
    VectorXd j;
    if (k == 0) {
      j = fluxes.front();
    } else if (k + 1 == count) {
      j = fluxes.back();
    } else {
      j = 0.5 * (fluxes[k - 1] + fluxes[k]);
    }
    const VectorXd l = edge_weights(sys, r.slices[k]);
    const VectorXd grad = j.cwiseQuotient(l);
    path.times.push_back(static_cast<double>(k) * dt);
    path.rho.push_back(r.slices[k]);
    path.psi.push_back(potential_from_gradient(grad, h));
    path.speed.push_back(grad.dot(l.cwiseProduct(grad)));
  }
  return path;
}

}  // namespace

GeodesicVelocity geodesic_rhs(const FlowSystem& sys, const VectorXd& rho, const VectorXd& psi) {
  if (psi.size() != sys.nodes()) throw SizeMismatchError("geodesic_rhs: psi has the wrong size");
  const EdgeData e = edge_data(sys, rho);
  const VectorXd gpsi = DiscreteGradient(sys.grid).apply(psi);
  const Index n = sys.edges();
  const auto& kappa = sys.weights.kappa;

  GeodesicVelocity out;
  out.rho = DiscreteGradient(sys.grid).apply_transpose(e.weight.cwiseProduct(gpsi));
  out.psi = VectorXd::Zero(sys.nodes());
  for (Index q = 0; q < n; ++q) {
    const double sq = gpsi[q] * gpsi[q];
    out.psi[q] -= 0.5 * kappa[q] * e.d1[q] * e.dphi[q] * sq;
    out.psi[q + 1] -= 0.5 * kappa[q] * e.d2[q] * e.dphi[q + 1] * sq;
  }
  return out;
}

double hamiltonian(const FlowSystem& sys, const VectorXd& rho, const VectorXd& psi) {
  return 0.5 * psi.dot(onsager_apply(sys, rho, psi));
}

GeodesicPath minimize_action(const FlowSystem& sys, const VectorXd& rho0, const VectorXd& rho1,
                             const GeodesicOptions& options) {
  validate_endpoints(sys, rho0, rho1);
  if (options.coarse_slices < 1 || options.fine_slices < 1)
    throw ConfigurationError("minimize_action: slice counts must be positive");
  if (rho0 == rho1) return trivial_path(sys, rho0, rho1);
  const double target = minimization_target(options);
  MinimizationResult coarse =
      lbfgs(sys, linear_slices(rho0, rho1, options.coarse_slices), target, options.max_minimization_iterations);
  MinimizationResult fine = lbfgs(sys, refine_slices(coarse.slices, options.fine_slices), target,
                                  options.max_minimization_iterations);
  if (!fine.converged)
    throw GeodesicError("minimize_action: projected gradient did not reach the tolerance",
                        std::numeric_limits<double>::quiet_NaN(), fine.residual);
  return path_from_slices(sys, fine);
}

GeodesicPath shoot(const FlowSystem& sys, const VectorXd& rho0, const VectorXd& rho1,
                   const GeodesicOptions& options) {
  validate_endpoints(sys, rho0, rho1);
  if (options.steps < 1) throw ConfigurationError("shoot: steps must be positive");
  if (rho0 == rho1) return trivial_path(sys, rho0, rho1);
  const Index n = sys.edges();
  const double h = sys.grid.h;

  // Initial guess: G psi = J / L at the midpoint, J the flux of the straight line.
  const VectorXd mid = 0.5 * (rho0 + rho1);
  const VectorXd guess_grad = edge_flux(rho1 - rho0, h).cwiseQuotient(edge_weights(sys, mid));
  VectorXd z = potential_from_gradient(guess_grad, h).head(n);

  VectorXd r;
  for (int attempt = 0;; ++attempt) {
    try {
      r = shooting_residual(sys, rho0, rho1, z, options.steps);
      break;
    } catch (const DomainError&) {
      if (attempt >= 40) {
        r = VectorXd::Constant(sys.nodes(), std::numeric_limits<double>::infinity());
        break;
      }
      z *= 0.5;
    }
  }

  double norm = r.cwiseAbs().maxCoeff();
  int iterations = 0;
  for (; iterations < options.max_newton && norm > options.tol && std::isfinite(norm); ++iterations) {
    const double eps = options.jacobian_step * std::max(1.0, z.cwiseAbs().maxCoeff());
    Eigen::MatrixXd jac(n, n);
    bool jacobian_ok = true;
    for (Index c = 0; c < n && jacobian_ok; ++c) {
      VectorXd zc = z;
      zc[c] += eps;
      try {
        jac.col(c) = (shooting_residual(sys, rho0, rho1, zc, options.steps) - r).head(n) / eps;
      } catch (const DomainError&) {
        jacobian_ok = false;
      }
    }
    if (!jacobian_ok) break;
    const VectorXd dz = jac.colPivHouseholderQr().solve(-r.head(n));
    if (!dz.allFinite()) break;

    bool accepted = false;
    double step = 1.0;
    for (int ls = 0; ls < 40; ++ls, step *= 0.5) {
      const VectorXd zt = z + step * dz;
      VectorXd rt;
      try {
        rt = shooting_residual(sys, rho0, rho1, zt, options.steps);
      } catch (const DomainError&) {
        continue;
      }
      const double nt = rt.cwiseAbs().maxCoeff();
      if (nt < (1.0 - 1e-4 * step) * norm) {
        z = zt;
        r = rt;
        norm = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }

  if (norm <= options.tol) {
    const auto states = integrate_geodesic(sys, {rho0, full_psi(z)}, 1.0, options.steps, true);
    GeodesicPath path;
    path.rho0 = rho0;
    path.rho1 = rho1;
    path.method = "shooting";
    path.residual = norm;
    path.shooting_residual = norm;
    path.iterations = iterations;
    const double dt = 1.0 / options.steps;
    for (std::size_t k = 0; k < states.size(); ++k) {
      path.times.push_back(static_cast<double>(k) * dt);
      path.rho.push_back(states[k].rho);
      path.psi.push_back(centred(states[k].psi));
      path.speed.push_back(2.0 * hamiltonian(sys, states[k].rho, states[k].psi));
    }
    path.action = simpson(path.speed, dt);
    return path;
  }

  if (!options.allow_fallback)
    throw GeodesicError("shoot: Newton iteration did not reach the tolerance", norm,
                        std::numeric_limits<double>::quiet_NaN());
  try {
    GeodesicPath path = minimize_action(sys, rho0, rho1, options);
    path.shooting_residual = norm;
    return path;
  } catch (const GeodesicError& err) {
    throw GeodesicError("shoot: neither shooting nor action minimization reached the tolerance", norm,
                        err.minimization_residual());
  }
}

double distance(const FlowSystem& sys, const VectorXd& rho0, const VectorXd& rho1, const GeodesicOptions& options) {
  return shoot(sys, rho0, rho1, options).distance();
}

VerificationReport verify_path(const FlowSystem& sys, const GeodesicPath& path, double lambda, int samples,
                               const VerificationOptions& options) {
  if (samples < 2) throw ConfigurationError("verify_path: need at least two samples");
  if (path.rho.empty()) throw ConfigurationError("verify_path: empty path");

  VerificationReport report;
  report.lambda = lambda;
  report.action = path.action;
  report.distance = path.distance();
  report.method = path.method;
  report.boundary_residual = (path.rho.back() - path.rho1).cwiseAbs().maxCoeff();

  const double e0 = entropy(sys, path.rho.front());
  const double e1 = entropy(sys, path.rho.back());
  const double w2 = path.action;
  const std::size_t last = path.rho.size() - 1;

  auto local_second_difference = [&](const VectorXd& rho, const VectorXd& psi, double e_mid, double delta) {
    const PhaseState y{rho, psi};
    const double ep = entropy(sys, integrate_geodesic(sys, y, delta, options.fd_substeps, false).back().rho);
    const double em = entropy(sys, integrate_geodesic(sys, y, -delta, options.fd_substeps, false).back().rho);
    return (ep - 2.0 * e_mid + em) / (delta * delta);
  };

  report.worst_chord_violation = -std::numeric_limits<double>::infinity();
  report.worst_d2_violation = -std::numeric_limits<double>::infinity();
  bool all_fd = true;
  for (int s = 0; s < samples; ++s) {
    const auto idx = static_cast<std::size_t>(
        std::llround(static_cast<double>(s) * static_cast<double>(last) / (samples - 1)));
    VerificationSample sample;
    sample.t = path.times[idx];
    sample.entropy = entropy(sys, path.rho[idx]);
    sample.chord_bound = (1.0 - sample.t) * e0 + sample.t * e1 - 0.5 * lambda * sample.t * (1.0 - sample.t) * w2;
    sample.speed = path.speed[idx];
    sample.d2_formula = second_derivative_formula(sys, path.rho[idx], path.psi[idx]);
    try {
      const double full = local_second_difference(path.rho[idx], path.psi[idx], sample.entropy, options.fd_step);
      const double half =
          local_second_difference(path.rho[idx], path.psi[idx], sample.entropy, 0.5 * options.fd_step);
      sample.d2_finite_difference = (4.0 * half - full) / 3.0;
    } catch (const DomainError&) {
      all_fd = false;
    }
    report.worst_chord_violation = std::max(report.worst_chord_violation, sample.entropy - sample.chord_bound);
    if (std::isfinite(sample.d2_finite_difference)) {
      report.worst_d2_violation = std::max(report.worst_d2_violation, lambda * w2 - sample.d2_finite_difference);
      const double scale = std::max(1e-4 * std::abs(sample.d2_formula), 1e-7);
      report.worst_d2_mismatch =
          std::max(report.worst_d2_mismatch, std::abs(sample.d2_finite_difference - sample.d2_formula) / scale);
    }
    report.samples.push_back(sample);
  }

  if (w2 > 0.0) {
    for (double v : path.speed) report.speed_deviation = std::max(report.speed_deviation, std::abs(v - w2) / w2);
  }

  report.chord_holds = report.worst_chord_violation <= options.chord_slack;
  report.differential_holds = all_fd && report.worst_d2_violation <= options.d2_slack;
  report.formula_matches = all_fd && report.worst_d2_mismatch <= 1.0;
  report.constant_speed = report.speed_deviation <= options.speed_tolerance;
  return report;
}

VerificationReport verify_displacement_convexity(const FlowSystem& sys, const VectorXd& rho0, const VectorXd& rho1,
                                                 double lambda, int samples, const GeodesicOptions& geodesic,
                                                 const VerificationOptions& options) {
  return verify_path(sys, shoot(sys, rho0, rho1, geodesic), lambda, samples, options);
}

}  // namespace fpconvex
