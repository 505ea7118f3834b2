#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "fpconvex/report.hpp"

namespace fpconvex {

/// A scalar function on (0, inf) together with its first three derivatives.
///
/// `family` tags the closed forms the library knows about, so that means
/// built on top of them can use cancellation-free evaluations instead of the
/// generic difference quotients.
struct SmoothFunction {
  enum class Family { Custom, Identity, Power, Boltzmann };

  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
  std::function<double(double)> d3;
  Family family = Family::Custom;
  double exponent = 1.0;  // only meaningful for Family::Power
};

/// s -> s.
SmoothFunction identity_function();
/// s -> s^alpha, alpha > 0.
SmoothFunction power_function(double alpha);
/// Boltzmann density s -> s log s - s + 1 (so that f(1) = 0 and f'(s) = log s).
SmoothFunction boltzmann_density();
/// Anything else; d3 may be empty if only off-diagonal partials are needed.
SmoothFunction custom_function(std::string name, std::function<double(double)> value,
                               std::function<double(double)> d1, std::function<double(double)> d2,
                               std::function<double(double)> d3 = {});

struct MeanPartials {
  double d1 = 0.0;
  double d2 = 0.0;
};

/// Two-variable mean Lambda(s, t) on the open positive quadrant.
///
/// Kinds:
///  - Logarithmic:  (s - t) / (log s - log t)
///  - FMean(f):     (s - t) / (f'(s) - f'(t)),  Lambda(s, s) = 1 / f''(s)
///  - Power(alpha): (alpha-1)/alpha * (s^alpha - t^alpha) / (s^(alpha-1) - t^(alpha-1))
///  - Quotient(phi, U'): (phi(s) - phi(t)) / (U'(s) - U'(t))
///
/// Values are cheap to copy; the function handles are shared.
class MeanFunction {
 public:
  enum class Kind { Logarithmic, FMean, Power, Quotient };

  static MeanFunction logarithmic();
  static MeanFunction f_mean(SmoothFunction f);
  static MeanFunction power(double alpha);
  /// `du` is U' with its derivatives (value = U', d1 = U'', d2 = U''').
  static MeanFunction quotient(SmoothFunction phi, SmoothFunction du);

  Kind kind() const noexcept { return kind_; }
  double alpha() const noexcept { return alpha_; }
  std::string name() const;

  double operator()(double s, double t) const;
  MeanPartials partials(double s, double t) const;

 private:
  MeanFunction(Kind kind, double alpha, std::shared_ptr<const SmoothFunction> first,
               std::shared_ptr<const SmoothFunction> second);

  Kind kind_;
  double alpha_;
  std::shared_ptr<const SmoothFunction> first_;   // f for FMean, phi for Quotient
  std::shared_ptr<const SmoothFunction> second_;  // U' for Quotient
};

/// Relative width of the band |s - t| <= kDiagonalBand * max(s, t) on which
/// every mean switches to its Taylor expansion about the midpoint.
inline constexpr double kDiagonalBand = 1e-8;

double log_mean(double s, double t);
double f_mean(const SmoothFunction& f, double s, double t);
double power_mean(double alpha, double s, double t);
double quotient_mean(const SmoothFunction& phi, const SmoothFunction& du, double s, double t);
MeanPartials mean_partials(const MeanFunction& m, double s, double t);

// ---------------------------------------------------------------------------
// Property checkers

/// 64 log-spaced points on [1e-3 t, 1e3 t].
std::vector<double> default_r_grid(double t);

/// Checks properties (i)-(v) of the logarithmic mean at one point:
///  (i)   Lambda(s,t) = Lambda(t,s) and d1 Lambda(s,t) = d2 Lambda(t,s)
///  (ii)  d1 Lambda(s,t) = Lambda (s - Lambda) / (s (s - t)) against central differences
///  (iii) d1 Lambda + d2 Lambda = Lambda^2 / (s t)
///  (iv)  max_r (Lambda(r,t) - d1 Lambda(t,s) r) = t d1 Lambda(s,t), grid search + golden section
///  (v)   Lambda(s,t) (a/s + b/t) >= 2 sqrt(a b)
/// Residuals are relative; each property passes at `tolerance`.
PropertyReport check_log_mean_identities(double s, double t, double a, double b,
                              std::span<const double> r_grid, double tolerance = 1e-6);

/// Samples `sample_count` random quadruples and points and checks
///   - the second-difference inequality
///       -L(u0,u1) + 2 L(u1,u2) - L(u2,u3) >= d1L(u1,u2)(-u0+2u1-u2) + d2L(u1,u2)(-u1+2u2-u3)
///   - negative semidefiniteness of a central-difference Hessian.
/// Failures keep the first witness encountered.
PropertyReport check_concavity(const MeanFunction& m, std::size_t sample_count,
                               std::uint64_t seed = 0);

}  // namespace fpconvex
