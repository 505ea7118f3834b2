#include "fpconvex/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fpconvex/error.hpp"

namespace fpconvex {

namespace {

void require_increasing(const SmoothFunction& phi) {
  if (!phi.value || !phi.d1 || !phi.d2) throw ConfigurationError("flow: phi needs value, d1 and d2");
}

// F with F' = log phi and F(1) = 0.
double phi_entropy_density(const SmoothFunction& phi, double s) {
  switch (phi.family) {
    case SmoothFunction::Family::Identity:
      return s * std::log(s) - s + 1.0;
    case SmoothFunction::Family::Power:
      return phi.exponent * (s * std::log(s) - s + 1.0);
    case SmoothFunction::Family::Boltzmann:
    case SmoothFunction::Family::Custom:
      break;
  }
  auto integrand = [&phi](double r) { return std::log(phi.value(r)); };
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 1.0, s, 15, 1e-13);
}

double phi_inverse(const SmoothFunction& phi, double y) {
  switch (phi.family) {
    case SmoothFunction::Family::Identity:
      return y;
    case SmoothFunction::Family::Power:
      return std::pow(y, 1.0 / phi.exponent);
    default:
      break;
  }
  // Bracket and bisect; phi is increasing.
  double lo = 1e-300, hi = 1.0;
  while (phi.value(hi) < y && hi < 1e300) hi *= 2.0;
  for (int it = 0; it < 2000 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = lo > 0.0 && hi / lo > 4.0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    (phi.value(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// max |phi''/phi'| on [a, b]; closed form for powers, sampling otherwise.
double log_derivative_bound(const SmoothFunction& phi, double a, double b) {
  if (a > b) std::swap(a, b);
  switch (phi.family) {
    case SmoothFunction::Family::Identity:
      return 0.0;
    case SmoothFunction::Family::Power:
      return std::abs(phi.exponent - 1.0) / a;
    default:
      break;
  }
  double best = 0.0;
  constexpr int kSamples = 1025;
  for (int k = 0; k < kSamples; ++k) {
    const double s = a + (b - a) * k / (kSamples - 1);
    best = std::max(best, std::abs(phi.d2(s) / phi.d1(s)));
  }
  return best;
}

}  // namespace

FlowSystem FlowSystem::fokker_planck(const Grid& grid, const Potential& potential, SmoothFunction phi) {
  require_increasing(phi);
  FlowSystem sys;
  sys.path = Path::FokkerPlanck;
  sys.grid = grid;
  sys.weights = build_weights(grid, potential);
  sys.rates = build_rate_matrix(grid, sys.weights);
  sys.phi = std::move(phi);
  sys.f = boltzmann_density();
  sys.mean = MeanFunction::logarithmic();
  return sys;
}

FlowSystem FlowSystem::heat(const Grid& grid, SmoothFunction f) {
  if (!f.value || !f.d1 || !f.d2) throw ConfigurationError("flow: f needs value, d1 and d2");
  FlowSystem sys;
  sys.path = Path::Heat;
  sys.grid = grid;
  sys.weights = build_weights(grid, Potential::zero());
  sys.rates = build_rate_matrix(grid, sys.weights);
  sys.phi = identity_function();
  sys.mean = MeanFunction::f_mean(f);
  sys.f = std::move(f);
  return sys;
}

void require_state(const FlowSystem& sys, const Eigen::VectorXd& rho) {
  if (rho.size() != sys.nodes()) {
    std::ostringstream msg;
    msg << "state has " << rho.size() << " entries, expected " << sys.nodes();
    throw SizeMismatchError(msg.str());
  }
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0) || !std::isfinite(rho[i])) {
      std::ostringstream msg;
      msg << "state entry " << i << " is not positive (" << rho[i] << ")";
      throw DomainError(msg.str());
    }
  }
}

EdgeData edge_data(const FlowSystem& sys, const Eigen::VectorXd& rho, bool with_partials) {
  require_state(sys, rho);
  const Eigen::Index m = sys.nodes(), n = sys.edges();
  EdgeData e;
  e.u.resize(m);
  e.dphi.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double wi = sys.weights.w[i];
    e.u[i] = sys.phi.value(rho[i]) / wi;
    e.dphi[i] = sys.phi.d1(rho[i]) / wi;
  }
  e.mean.resize(n);
  e.weight.resize(n);
  if (with_partials) {
    e.d1.resize(n);
    e.d2.resize(n);
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    e.mean[k] = sys.mean(e.u[k], e.u[k + 1]);
    e.weight[k] = sys.weights.kappa[k] * e.mean[k];
    if (with_partials) {
      const MeanPartials p = sys.mean.partials(e.u[k], e.u[k + 1]);
      e.d1[k] = p.d1;
      e.d2[k] = p.d2;
    }
  }
  return e;
}

double entropy(const FlowSystem& sys, const Eigen::VectorXd& rho) {
  require_state(sys, rho);
  double total = 0.0;
  if (sys.path == FlowSystem::Path::Heat) {
    for (Eigen::Index i = 0; i < rho.size(); ++i) total += sys.f.value(rho[i]);
    return total;
  }
  for (Eigen::Index i = 0; i < rho.size(); ++i)
    total += phi_entropy_density(sys.phi, rho[i]) + rho[i] * sys.weights.potential(sys.grid.x[i]);
  return total;
}

Eigen::VectorXd entropy_gradient(const FlowSystem& sys, const Eigen::VectorXd& rho) {
  require_state(sys, rho);
  Eigen::VectorXd g(rho.size());
  if (sys.path == FlowSystem::Path::Heat) {
    for (Eigen::Index i = 0; i < rho.size(); ++i) g[i] = sys.f.d1(rho[i]);
    return g;
  }
  for (Eigen::Index i = 0; i < rho.size(); ++i)
    g[i] = std::log(sys.phi.value(rho[i])) + sys.weights.potential(sys.grid.x[i]);
  return g;
}

Eigen::VectorXd edge_weights(const FlowSystem& sys, const Eigen::VectorXd& rho) {
  return edge_data(sys, rho, false).weight;
}

Eigen::VectorXd onsager_apply(const FlowSystem& sys, const Eigen::VectorXd& rho, const Eigen::VectorXd& psi) {
  if (psi.size() != sys.nodes()) throw SizeMismatchError("onsager_apply: psi has the wrong size");
  const DiscreteGradient g(sys.grid);
  return g.apply_transpose(edge_weights(sys, rho).cwiseProduct(g.apply(psi)));
}

Eigen::MatrixXd onsager_dense(const FlowSystem& sys, const Eigen::VectorXd& rho) {
  const Eigen::MatrixXd g = DiscreteGradient(sys.grid).dense();
  return g.transpose() * edge_weights(sys, rho).asDiagonal() * g;
}

Eigen::VectorXd dl_apply(const FlowSystem& sys, const Eigen::VectorXd& rho, const Eigen::VectorXd& xi) {
  if (xi.size() != sys.nodes()) throw SizeMismatchError("dl_apply: xi has the wrong size");
  const EdgeData e = edge_data(sys, rho);
  const Eigen::Index n = sys.edges();
  Eigen::VectorXd out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out[k] = sys.weights.kappa[k] *
             (e.d1[k] * e.dphi[k] * xi[k] + e.d2[k] * e.dphi[k + 1] * xi[k + 1]);
  }
  return out;
}

Eigen::VectorXd rhs(const FlowSystem& sys, const Eigen::VectorXd& rho) {
  require_state(sys, rho);
  return sys.rates.apply(rho.unaryExpr(sys.phi.value));
}

double gradient_norm(const FlowSystem& sys, const Eigen::VectorXd& rho) {
  const Eigen::VectorXd p = rho.unaryExpr(sys.phi.value);
  const Eigen::Index n = sys.edges();
  return std::sqrt((p.tail(n) - p.head(n)).squaredNorm() / sys.grid.h);
}

bool phi_prime_nonincreasing(const SmoothFunction& phi, double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo)) throw DomainError("phi_prime_nonincreasing: need 0 < lo <= hi");
  constexpr int kSamples = 257;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kSamples; ++k) {
    const double s = lo * std::pow(hi / lo, static_cast<double>(k) / (kSamples - 1));
    const double d = phi.d1(s);
    if (d > previous * (1.0 + 1e-12)) return false;
    previous = d;
  }
  return true;
}

Trajectory integrate(const FlowSystem& sys, const Eigen::VectorXd& rho0, double t_end,
                     const FlowOptions& options) {
  require_state(sys, rho0);
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigurationError("integrate: t_end must be positive");
  if (options.samples < 2) throw ConfigurationError("integrate: need at least two samples");

  std::vector<double> sample_times(options.samples);
  for (std::size_t k = 0; k < options.samples; ++k)
    sample_times[k] = t_end * static_cast<double>(k) / static_cast<double>(options.samples - 1);
  sample_times.back() = t_end;

  IntegratorOptions io;
  io.atol = options.tol;
  io.rtol = options.tol;
  auto ode = [&sys](double, const Eigen::VectorXd& rho) { return rhs(sys, rho); };
  auto guard = [](const Eigen::VectorXd& rho) { return (rho.array() > 0.0).all(); };
  const OdeSolution sol = integrate_dopri5(ode, rho0, 0.0, sample_times, io, guard);

  Trajectory traj;
  traj.times = sol.times;
  traj.states = sol.states;
  traj.accepted_steps = sol.accepted_steps;
  traj.rejected_steps = sol.rejected_steps;
  for (const auto& rho : traj.states) {
    traj.entropy.push_back(entropy(sys, rho));
    traj.min_rho.push_back(rho.minCoeff());
    traj.max_rho.push_back(rho.maxCoeff());
    traj.grad_norm.push_back(gradient_norm(sys, rho));
  }
  return traj;
}

PropertyReport apriori_monitor(const FlowSystem& sys, const Trajectory& trajectory, double slack) {
  if (!sys.weights.potential.is_zero())
    throw ScopeError("apriori_monitor: the estimates are only available for a zero potential");
  PropertyReport report;
  if (trajectory.states.empty()) return report;

  const double h = sys.grid.h;
  const Eigen::Index n = sys.edges();
  const Eigen::VectorXd& rho0 = trajectory.states.front();
  const double m = rho0.minCoeff();
  const double big_m = rho0.maxCoeff();

  auto phi_of = [&](const Eigen::VectorXd& rho) { return Eigen::VectorXd(rho.unaryExpr(sys.phi.value)); };
  auto dphi_of = [&](const Eigen::VectorXd& rho) { return Eigen::VectorXd(rho.unaryExpr(sys.phi.d1)); };
  auto diffs = [n](const Eigen::VectorXd& v) { return Eigen::VectorXd(v.tail(n) - v.head(n)); };
  // |grad_h v|_2 = (sum_k h |(v_{k+1} - v_k)/h|^2)^{1/2}
  auto l2 = [&](const Eigen::VectorXd& v) { return std::sqrt(diffs(v).squaredNorm() / h); };

  const double phi_grad0 = l2(phi_of(rho0));
  const double rho_grad0 = l2(rho0);
  const double grad_bound = phi_grad0 / std::sqrt(h);
  const double c_bound = log_derivative_bound(sys.phi, phi_inverse(sys.phi, m), phi_inverse(sys.phi, big_m));
  const double phi_prime_bound = c_bound * rho_grad0 / std::sqrt(h);

  const bool power_example = sys.phi.family == SmoothFunction::Family::Power && sys.phi.exponent > 0.0 &&
                             sys.phi.exponent < 1.0;
  const double alpha = sys.phi.exponent;

  struct Worst {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<double> witness;
    void update(double v, double t, double index) {
      if (v > value) {
        value = v;
        witness = {t, index};
      }
    }
  };
  Worst max_principle, linf, decay, phi_prime, ex_upper, ex_lower, ex_grad;

  double previous_energy = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < trajectory.states.size(); ++s) {
    const Eigen::VectorXd& rho = trajectory.states[s];
    const double t = trajectory.times[s];
    Eigen::Index lo_idx, hi_idx;
    const double lo = rho.minCoeff(&lo_idx);
    const double hi = rho.maxCoeff(&hi_idx);
    max_principle.update(std::max(m - lo, hi - big_m), t, static_cast<double>(m - lo > hi - big_m ? lo_idx : hi_idx));

    const Eigen::VectorXd dp = diffs(phi_of(rho));
    Eigen::Index edge = 0;
    const double max_dp = dp.cwiseAbs().maxCoeff(&edge);
    linf.update(max_dp / h - grad_bound, t, static_cast<double>(edge));

    const double energy = dp.squaredNorm();
    decay.update(energy - previous_energy, t, -1.0);
    previous_energy = energy;

    const Eigen::VectorXd dphi = dphi_of(rho);
    const double phi_prime_grad = diffs(dphi).cwiseAbs().maxCoeff(&edge) / h;
    phi_prime.update(phi_prime_grad - phi_prime_bound, t, static_cast<double>(edge));

    if (power_example) {
      const double min_dphi = dphi.minCoeff();
      ex_upper.update(min_dphi - std::pow(big_m, alpha - 1.0), t, -1.0);
      ex_lower.update(alpha * std::pow(big_m, alpha - 1.0) - min_dphi, t, -1.0);
      const double bound = (1.0 - alpha) * std::pow(m, -2.0 / alpha) * rho_grad0 / std::sqrt(h);
      ex_grad.update(phi_prime_grad - bound, t, static_cast<double>(edge));
    }
  }

  auto push = [&](const char* name, const Worst& w) {
    PropertyResult r;
    r.name = name;
    r.residual = std::max(w.value, 0.0);
    r.tolerance = slack;
    r.passed = w.value <= slack;
    if (!r.passed) r.witness = w.witness;
    report.results.push_back(std::move(r));
  };
  push("max_principle", max_principle);
  push("gradient_linf_bound", linf);
  push("gradient_l2_decay", decay);
  push("phi_prime_gradient_bound", phi_prime);
  if (power_example) {
    push("power_min_phi_prime_upper", ex_upper);
    push("power_min_phi_prime_lower", ex_lower);
    push("power_phi_prime_gradient", ex_grad);
  }
  return report;
}

}  // namespace fpconvex
