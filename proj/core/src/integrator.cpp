#include "fpconvex/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpconvex/error.hpp"

namespace fpconvex {

namespace {

// Dormand-Prince tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Fifth-order minus embedded fourth-order weights.
constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                 e5 = b5 - (-92097.0 / 339200), e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

double error_norm(const Eigen::VectorXd& err, const Eigen::VectorXd& y, const Eigen::VectorXd& y_new,
                  const IntegratorOptions& opt) {
  const Eigen::VectorXd scale =
      (y.cwiseAbs().cwiseMax(y_new.cwiseAbs()) * opt.rtol).array() + opt.atol;
  return std::sqrt(err.cwiseQuotient(scale).squaredNorm() / static_cast<double>(err.size()));
}

bool all_finite(const Eigen::VectorXd& v) { return v.allFinite(); }

}  // namespace

OdeSolution integrate_dopri5(const OdeRhs& rhs, const Eigen::VectorXd& y0, double t0,
                             const std::vector<double>& sample_times, const IntegratorOptions& options,
                             const StateGuard& guard) {
  OdeSolution out;
  if (sample_times.empty()) return out;
  if (!std::is_sorted(sample_times.begin(), sample_times.end()) || sample_times.front() < t0)
    throw ConfigurationError("integrate_dopri5: sample times must be sorted and start at or after t0");
  if (!(options.atol > 0.0) || !(options.rtol >= 0.0))
    throw ConfigurationError("integrate_dopri5: tolerances must be positive");
  if (guard && !guard(y0)) throw DomainError("integrate_dopri5: initial state rejected by guard");

  const double t_end = sample_times.back();
  const double span = std::max(t_end - t0, 0.0);
  const double min_step = options.min_step * std::max(span, 1e-300);

  double t = t0;
  Eigen::VectorXd y = y0;
  Eigen::VectorXd k1 = rhs(t, y);

  double h = options.initial_step;
  if (!(h > 0.0)) {
    const Eigen::VectorXd sc = (y.cwiseAbs() * options.rtol).array() + options.atol;
    const double d0 = std::sqrt(y.cwiseQuotient(sc).squaredNorm() / y.size());
    const double d1 = std::sqrt(k1.cwiseQuotient(sc).squaredNorm() / y.size());
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  }
  if (span > 0.0) h = std::min(h, span);

  Eigen::VectorXd k2, k3, k4, k5, k6, k7, y_new, err;

  for (double target : sample_times) {
    while (t < target) {
      if (out.accepted_steps + out.rejected_steps >= options.max_steps) {
        throw IntegrationError("integrate_dopri5: step budget exhausted", t, y);
      }
      bool clipped = false;
      double step = h;
      if (t + step >= target) {
        step = target - t;
        clipped = true;
      }

      bool admissible = true;
      try {
        k2 = rhs(t + c2 * step, y + step * (a21 * k1));
        k3 = rhs(t + c3 * step, y + step * (a31 * k1 + a32 * k2));
        k4 = rhs(t + c4 * step, y + step * (a41 * k1 + a42 * k2 + a43 * k3));
        k5 = rhs(t + c5 * step, y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        k6 = rhs(t + step, y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        admissible = all_finite(y_new) && (!guard || guard(y_new));
        if (admissible) k7 = rhs(t + step, y_new);
      } catch (const DomainError&) {
        admissible = false;
      }

      if (!admissible) {
        ++out.rejected_steps;
        ++out.guard_rejections;
        h = 0.5 * step;
        if (h < min_step) throw IntegrationError("integrate_dopri5: step size underflow at guard", t, y);
        continue;
      }

      err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
      const double en = error_norm(err, y, y_new, options);
      if (!std::isfinite(en)) {
        ++out.rejected_steps;
        h = 0.5 * step;
        if (h < min_step) throw IntegrationError("integrate_dopri5: non-finite error estimate", t, y);
        continue;
      }

      const double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      if (en <= 1.0) {
        ++out.accepted_steps;
        t = clipped ? target : t + step;
        y = y_new;
        k1 = k7;
        // A clipped step says nothing about the natural step size.
        h = clipped ? std::max(h, step * factor) : step * factor;
      } else {
        ++out.rejected_steps;
        h = step * std::min(factor, 0.9);
        if (h < min_step) {
          std::ostringstream msg;
          msg << "integrate_dopri5: step size underflow (h = " << h << ")";
          throw IntegrationError(msg.str(), t, y);
        }
      }
    }
    out.times.push_back(target);
    out.states.push_back(y);
  }
  return out;
}

std::vector<Eigen::VectorXd> integrate_rk4(const OdeRhs& rhs, const Eigen::VectorXd& y0, double t0,
                                           double t1, int steps) {
  if (steps < 1) throw ConfigurationError("integrate_rk4: need at least one step");
  std::vector<Eigen::VectorXd> path;
  path.reserve(steps + 1);
  path.push_back(y0);
  const double dt = (t1 - t0) / steps;
  Eigen::VectorXd y = y0;
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * dt;
    const Eigen::VectorXd s1 = rhs(t, y);
    const Eigen::VectorXd s2 = rhs(t + 0.5 * dt, y + 0.5 * dt * s1);
    const Eigen::VectorXd s3 = rhs(t + 0.5 * dt, y + 0.5 * dt * s2);
    const Eigen::VectorXd s4 = rhs(t + dt, y + dt * s3);
    y += dt / 6.0 * (s1 + 2.0 * s2 + 2.0 * s3 + s4);
    path.push_back(y);
  }
  return path;
}

}  // namespace fpconvex
