#include "fpconvex/means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "dual.hpp"
#include "fpconvex/error.hpp"
#include "fpconvex/random.hpp"

namespace fpconvex {

namespace {

using detail::Dual;

void require_positive(double s, double t, const char* who) {
  if (!(s > 0.0) || !(t > 0.0) || !std::isfinite(s) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << who << ": arguments must be positive and finite (got " << s << ", " << t << ")";
    throw DomainError(msg.str());
  }
}

bool on_diagonal(double s, double t) {
  return std::abs(s - t) <= kDiagonalBand * std::max(s, t);
}

/// Band for the midpoint expansion of quotient-form partials. Their direct
/// evaluation loses about eps / e^2 and the expansion errs by O(e^2), which
/// balance near e = 1e-4.
constexpr double kPartialBand = 1e-4;

bool in_partial_band(double s, double t) { return std::abs(s - t) <= kPartialBand * (s + t); }

// Midpoint coordinates: s = m (1 + e), t = m (1 - e), |e| < 1.
template <class T>
std::pair<T, T> midpoint_coordinates(T s, T t) {
  return {(s + t) * 0.5, (s - t) / (s + t)};
}

// e / atanh(e), series below |e| = 1e-2.
double log_ratio(double e) {
  if (std::abs(e) < 1e-2) {
    const double e2 = e * e;
    return 1.0 -
           e2 * (1.0 / 3.0 +
                 e2 * (4.0 / 45.0 +
                       e2 * (44.0 / 945.0 + e2 * (428.0 / 14175.0 + e2 * (10196.0 / 467775.0)))));
  }
  return e / std::atanh(e);
}

// (1 + e - e/atanh(e)) / e, series below |e| = 1e-2.
double log_ratio_complement(double e) {
  if (std::abs(e) < 1e-2) {
    const double e2 = e * e;
    return 1.0 + e * (1.0 / 3.0 +
                      e2 * (4.0 / 45.0 +
                            e2 * (44.0 / 945.0 + e2 * (428.0 / 14175.0 + e2 * (10196.0 / 467775.0)))));
  }
  return (1.0 + e - log_ratio(e)) / e;
}

// atanh(e) = log(s/t) / 2; the logarithm is better conditioned once e is far from 0.
template <class T>
T half_log_ratio(T s, T t, T e) {
  using namespace detail;
  if (std::abs(value_of(e)) < 0.5) return atanh(e);
  return log(s / t) * 0.5;
}

// sqrt(1 - e^2) = 2 sqrt(s t) / (s + t).
template <class T>
T geometric_ratio(T s, T t) {
  using namespace detail;
  return sqrt(s * t) * 2.0 / (s + t);
}

// Power mean in midpoint form:
//   m sqrt(1 - e^2) (alpha-1)/alpha sinh(alpha A) / sinh((alpha-1) A),  A = atanh(e).
template <class T>
T power_mean_stable(double alpha, T s, T t) {
  using namespace detail;
  auto [m, e] = midpoint_coordinates(s, t);
  if (on_diagonal(value_of(s), value_of(t))) {
    return m * (T(1.0) + e * e * ((alpha - 2.0) / 3.0));
  }
  const T a = half_log_ratio(s, t, e);
  return m * geometric_ratio(s, t) * ((alpha - 1.0) / alpha) * sinh(a * alpha) /
         sinh(a * (alpha - 1.0));
}

// f-mean of f(s) = s^alpha in midpoint form, beta = alpha - 1:
//   m^(1-beta) e / (alpha (1 - e^2)^(beta/2) sinh(beta A)).
template <class T>
T power_f_mean_stable(double alpha, T s, T t) {
  using namespace detail;
  const double beta = alpha - 1.0;
  auto [m, e] = midpoint_coordinates(s, t);
  const T lead = pow(m, 1.0 - beta);
  if (on_diagonal(value_of(s), value_of(t))) {
    return lead * (T(1.0) + e * e * ((-beta * beta + 3.0 * beta - 2.0) / 6.0)) / (alpha * beta);
  }
  const T a = half_log_ratio(s, t, e);
  return lead * e / (pow(geometric_ratio(s, t), beta) * sinh(a * beta) * alpha);
}

template <class F>
MeanPartials dual_partials(F&& eval, double s, double t) {
  const Dual ds = eval(Dual(s, 1.0), Dual(t, 0.0));
  const Dual dt = eval(Dual(s, 0.0), Dual(t, 1.0));
  return {ds.d, dt.d};
}

MeanPartials log_mean_partials(double s, double t) {
  if (s == t) return {0.5, 0.5};
  const double e = (s - t) / (s + t);
  if (std::abs(e) >= 1e-2) {
    const double lam = log_mean(s, t);
    const double d1 = lam * (s - lam) / (s * (s - t));
    const double d2 = lam * (t - lam) / (t * (t - s));
    return {d1, d2};
  }
  // Same closed form rewritten in midpoint coordinates; exact at e -> 0.
  const double g = log_ratio(e);
  return {g * log_ratio_complement(e) / (2.0 * (1.0 + e)),
          g * log_ratio_complement(-e) / (2.0 * (1.0 - e))};
}

void require_power_f_mean(double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw DomainError("f_mean: f(s) = s^alpha needs alpha > 1 for f' to be strictly increasing");
  }
}

double quotient_f_mean(const SmoothFunction& f, double s, double t) {
  if (on_diagonal(s, t)) {
    const double m = 0.5 * (s + t);
    const double curvature = f.d2(m);
    if (!(curvature > 0.0)) throw DomainError("f_mean: f'' must be positive (" + f.name + ")");
    return 1.0 / curvature;
  }
  const double denom = f.d1(s) - f.d1(t);
  if (denom == 0.0) throw DegenerateMeanError("f_mean: f'(s) = f'(t) with s != t (" + f.name + ")");
  const double value = (s - t) / denom;
  if (!(value > 0.0) || !std::isfinite(value))
    throw DomainError("f_mean: f' is not strictly increasing on the range (" + f.name + ")");
  return value;
}

MeanPartials quotient_f_mean_partials(const SmoothFunction& f, double s, double t) {
  if (in_partial_band(s, t)) {
    if (!f.d3) throw ConfigurationError("f_mean: diagonal partials need f''' (" + f.name + ")");
    // With s = m + d, t = m - d: Lambda = 1 / (f''(m) + f''''(m) d^2 / 6) + O(d^4),
    // and f''''(m) d is replaced by (f'''(s) - f'''(t)) / 2.
    const double m = 0.5 * (s + t);
    const double c = f.d2(m);
    if (!(c > 0.0)) throw DomainError("f_mean: f'' must be positive (" + f.name + ")");
    const double even = -f.d3(m) / (2.0 * c * c);
    const double odd = (s == t) ? 0.0 : -(f.d3(s) - f.d3(t)) / (12.0 * c * c);
    return {even + odd, even - odd};
  }
  const double lam = quotient_f_mean(f, s, t);
  return {lam * (1.0 - lam * f.d2(s)) / (s - t), lam * (1.0 - lam * f.d2(t)) / (t - s)};
}

double quotient_mean_value(const SmoothFunction& phi, const SmoothFunction& du, double s, double t) {
  if (on_diagonal(s, t)) {
    const double m = 0.5 * (s + t);
    const double value = phi.d1(m) / du.d1(m);
    if (!(value > 0.0) || !std::isfinite(value))
      throw DomainError("quotient_mean: phi'/U'' must be positive on the diagonal");
    return value;
  }
  const double denom = du.value(s) - du.value(t);
  if (denom == 0.0) throw DegenerateMeanError("quotient_mean: U'(s) = U'(t) with s != t");
  const double value = (phi.value(s) - phi.value(t)) / denom;
  if (!(value > 0.0) || !std::isfinite(value))
    throw DomainError("quotient_mean: phi and U' must be increasing on the range");
  return value;
}

MeanPartials quotient_mean_partials(const SmoothFunction& phi, const SmoothFunction& du, double s,
                                  double t) {
  if (in_partial_band(s, t)) {
    if (!du.d2) throw ConfigurationError("quotient_mean: diagonal partials need U'''");
    // With s = m + d, t = m - d and g = U':
    //   Lambda = (phi'(m) + phi'''(m) d^2 / 6) / (g'(m) + g'''(m) d^2 / 6) + O(d^4),
    // and phi'''(m) d, g'''(m) d are replaced by half differences of phi'' and g''.
    const double m = 0.5 * (s + t);
    const double c = du.d1(m);
    const double even = 0.5 * (phi.d2(m) * c - phi.d1(m) * du.d2(m)) / (c * c);
    const double odd = (s == t) ? 0.0
                                : ((phi.d2(s) - phi.d2(t)) * c - phi.d1(m) * (du.d2(s) - du.d2(t))) /
                                      (12.0 * c * c);
    return {even + odd, even - odd};
  }
  const double lam = quotient_mean_value(phi, du, s, t);
  const double denom = du.value(s) - du.value(t);
  return {(phi.d1(s) - lam * du.d1(s)) / denom, -(phi.d1(t) - lam * du.d1(t)) / denom};
}

}  // namespace

// ---------------------------------------------------------------------------
// SmoothFunction factories

SmoothFunction identity_function() {
  SmoothFunction f;
  f.name = "identity";
  f.value = [](double s) { return s; };
  f.d1 = [](double) { return 1.0; };
  f.d2 = [](double) { return 0.0; };
  f.d3 = [](double) { return 0.0; };
  f.family = SmoothFunction::Family::Identity;
  return f;
}

SmoothFunction power_function(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError("power_function: alpha must be positive");
  if (alpha == 1.0) return identity_function();
  SmoothFunction f;
  std::ostringstream name;
  name << "power(" << alpha << ")";
  f.name = name.str();
  f.value = [alpha](double s) { return std::pow(s, alpha); };
  f.d1 = [alpha](double s) { return alpha * std::pow(s, alpha - 1.0); };
  f.d2 = [alpha](double s) { return alpha * (alpha - 1.0) * std::pow(s, alpha - 2.0); };
  f.d3 = [alpha](double s) {
    return alpha * (alpha - 1.0) * (alpha - 2.0) * std::pow(s, alpha - 3.0);
  };
  f.family = SmoothFunction::Family::Power;
  f.exponent = alpha;
  return f;
}

SmoothFunction boltzmann_density() {
  SmoothFunction f;
  f.name = "boltzmann";
  f.value = [](double s) { return s * std::log(s) - s + 1.0; };
  f.d1 = [](double s) { return std::log(s); };
  f.d2 = [](double s) { return 1.0 / s; };
  f.d3 = [](double s) { return -1.0 / (s * s); };
  f.family = SmoothFunction::Family::Boltzmann;
  return f;
}

SmoothFunction custom_function(std::string name, std::function<double(double)> value,
                               std::function<double(double)> d1, std::function<double(double)> d2,
                               std::function<double(double)> d3) {
  if (!value || !d1 || !d2) throw ConfigurationError("custom_function: value, d1 and d2 are required");
  SmoothFunction f;
  f.name = std::move(name);
  f.value = std::move(value);
  f.d1 = std::move(d1);
  f.d2 = std::move(d2);
  f.d3 = std::move(d3);
  return f;
}

// ---------------------------------------------------------------------------
// Scalar means

double log_mean(double s, double t) {
  require_positive(s, t, "log_mean");
  if (s == t) return s;
  const double m = 0.5 * (s + t);
  const double e = (s - t) / (s + t);
  if (on_diagonal(s, t)) return m * (1.0 - e * e / 3.0);
  if (std::abs(e) >= 0.5) return (s - t) / std::log(s / t);
  return m * log_ratio(e);
}

double f_mean(const SmoothFunction& f, double s, double t) {
  require_positive(s, t, "f_mean");
  switch (f.family) {
    case SmoothFunction::Family::Boltzmann:
      return log_mean(s, t);
    case SmoothFunction::Family::Identity:
      throw DegenerateMeanError("f_mean: f' is constant for f(s) = s");
    case SmoothFunction::Family::Power:
      require_power_f_mean(f.exponent);
      if (f.exponent == 2.0) return 0.5;
      return power_f_mean_stable(f.exponent, s, t);
    case SmoothFunction::Family::Custom:
      break;
  }
  return quotient_f_mean(f, s, t);
}

double power_mean(double alpha, double s, double t) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("power_mean: alpha must be positive");
  require_positive(s, t, "power_mean");
  if (alpha == 1.0) return log_mean(s, t);
  if (alpha == 2.0) return 0.5 * (s + t);
  if (s == t) return s;
  return power_mean_stable(alpha, s, t);
}

double quotient_mean(const SmoothFunction& phi, const SmoothFunction& du, double s, double t) {
  require_positive(s, t, "quotient_mean");
  return quotient_mean_value(phi, du, s, t);
}

// ---------------------------------------------------------------------------
// MeanFunction

MeanFunction::MeanFunction(Kind kind, double alpha, std::shared_ptr<const SmoothFunction> first,
                           std::shared_ptr<const SmoothFunction> second)
    : kind_(kind), alpha_(alpha), first_(std::move(first)), second_(std::move(second)) {}

MeanFunction MeanFunction::logarithmic() { return MeanFunction(Kind::Logarithmic, 1.0, nullptr, nullptr); }

MeanFunction MeanFunction::f_mean(SmoothFunction f) {
  if (f.family == SmoothFunction::Family::Boltzmann) return logarithmic();
  if (f.family == SmoothFunction::Family::Identity)
    throw DegenerateMeanError("f_mean: f' is constant for f(s) = s");
  if (f.family == SmoothFunction::Family::Power) require_power_f_mean(f.exponent);
  const double alpha = f.exponent;
  return MeanFunction(Kind::FMean, alpha, std::make_shared<const SmoothFunction>(std::move(f)),
                      nullptr);
}

MeanFunction MeanFunction::power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("power_mean: alpha must be positive");
  return MeanFunction(Kind::Power, alpha, nullptr, nullptr);
}

MeanFunction MeanFunction::quotient(SmoothFunction phi, SmoothFunction du) {
  return MeanFunction(Kind::Quotient, 1.0, std::make_shared<const SmoothFunction>(std::move(phi)),
                      std::make_shared<const SmoothFunction>(std::move(du)));
}

std::string MeanFunction::name() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Logarithmic:
      out << "logarithmic";
      break;
    case Kind::FMean:
      out << "f-mean[" << first_->name << "]";
      break;
    case Kind::Power:
      out << "power(" << alpha_ << ")";
      break;
    case Kind::Quotient:
      out << "quotient[" << first_->name << ", " << second_->name << "]";
      break;
  }
  return out.str();
}

double MeanFunction::operator()(double s, double t) const {
  switch (kind_) {
    case Kind::Logarithmic:
      return log_mean(s, t);
    case Kind::FMean:
      return fpconvex::f_mean(*first_, s, t);
    case Kind::Power:
      return power_mean(alpha_, s, t);
    case Kind::Quotient:
      return quotient_mean(*first_, *second_, s, t);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

MeanPartials MeanFunction::partials(double s, double t) const {
  require_positive(s, t, "mean_partials");
  switch (kind_) {
    case Kind::Logarithmic:
      return log_mean_partials(s, t);
    case Kind::Power: {
      const double alpha = alpha_;
      if (alpha == 1.0) return log_mean_partials(s, t);
      if (alpha == 2.0) return {0.5, 0.5};
      if (s == t) return {0.5, 0.5};
      return dual_partials([alpha](Dual a, Dual b) { return power_mean_stable(alpha, a, b); }, s, t);
    }
    case Kind::FMean: {
      if (first_->family == SmoothFunction::Family::Power) {
        const double alpha = first_->exponent;
        if (alpha == 2.0) return {0.0, 0.0};
        return dual_partials([alpha](Dual a, Dual b) { return power_f_mean_stable(alpha, a, b); },
                             s, t);
      }
      return quotient_f_mean_partials(*first_, s, t);
    }
    case Kind::Quotient:
      return quotient_mean_partials(*first_, *second_, s, t);
  }
  return {};
}

MeanPartials mean_partials(const MeanFunction& m, double s, double t) { return m.partials(s, t); }

// ---------------------------------------------------------------------------
// Property checkers

bool PropertyReport::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed; });
}

const PropertyResult* PropertyReport::find(const std::string& name) const {
  for (const auto& r : results)
    if (r.name == name) return &r;
  return nullptr;
}

double PropertyReport::worst_residual(const std::string& name) const {
  double worst = 0.0;
  for (const auto& r : results)
    if (r.name == name) worst = std::max(worst, r.residual);
  return worst;
}

std::vector<double> default_r_grid(double t) {
  constexpr int kPoints = 64;
  std::vector<double> grid(kPoints);
  const double lo = std::log(1e-3 * t);
  const double hi = std::log(1e3 * t);
  for (int k = 0; k < kPoints; ++k) grid[k] = std::exp(lo + (hi - lo) * k / (kPoints - 1));
  return grid;
}

namespace {

PropertyResult make_result(std::string name, double residual, double tolerance,
                           std::vector<double> witness) {
  PropertyResult r;
  r.name = std::move(name);
  r.residual = residual;
  r.tolerance = tolerance;
  r.passed = std::isfinite(residual) && residual <= tolerance;
  if (!r.passed) r.witness = std::move(witness);
  return r;
}

double relative_gap(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), std::numeric_limits<double>::min());
}

double central_d1(double s, double t) {
  const double step = 1e-5 * s;
  return (log_mean(s + step, t) - log_mean(s - step, t)) / (2.0 * step);
}

// Golden-section maximization of a unimodal function on [lo, hi] in log r.
template <class F>
double golden_maximum(F&& objective, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = std::log(lo), b = std::log(hi);
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = objective(std::exp(c)), fd = objective(std::exp(d));
  for (int it = 0; it < 200 && (b - a) > 1e-13 * std::max(1.0, std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(std::exp(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(std::exp(d));
    }
  }
  return std::max(fc, fd);
}

}  // namespace

PropertyReport check_log_mean_identities(double s, double t, double a, double b,
                              std::span<const double> r_grid, double tolerance) {
  require_positive(s, t, "check_log_mean_identities");
  if (a < 0.0 || b < 0.0) throw DomainError("check_log_mean_identities: a and b must be nonnegative");
  PropertyReport report;
  const std::vector<double> at{s, t};
  const double lam = log_mean(s, t);
  const MeanPartials p = log_mean_partials(s, t);
  const MeanPartials q = log_mean_partials(t, s);

  // (i) symmetry of the value and exchange of the partials.
  {
    const double fd_d2 = [&] {
      const double step = 1e-5 * s;
      return (log_mean(t, s + step) - log_mean(t, s - step)) / (2.0 * step);
    }();
    const double res = std::max({relative_gap(log_mean(t, s), lam), relative_gap(q.d2, p.d1),
                                 relative_gap(fd_d2, p.d1)});
    report.results.push_back(make_result("symmetry", res, tolerance, at));
  }
  // (ii) closed-form partial against central differences.
  {
    const double closed = (s == t) ? 0.5 : lam * (s - lam) / (s * (s - t));
    const double fd = central_d1(s, t);
    const double res = std::max(relative_gap(fd, closed), relative_gap(p.d1, closed));
    report.results.push_back(make_result("partial_closed_form", res, tolerance, at));
  }
  // (iii) Euler-type identity for the sum of partials.
  {
    const double rhs = lam * lam / (s * t);
    report.results.push_back(make_result("partial_sum", relative_gap(p.d1 + p.d2, rhs), tolerance, at));
  }
  // (iv) Legendre-type identity.
  {
    const double slope = q.d1;
    auto objective = [&](double r) { return log_mean(r, t) - slope * r; };
    double best = -std::numeric_limits<double>::infinity();
    double found = s;
    std::size_t best_index = 0;
    for (std::size_t k = 0; k < r_grid.size(); ++k) {
      const double v = objective(r_grid[k]);
      if (v > best) {
        best = v;
        best_index = k;
      }
    }
    if (!r_grid.empty()) {
      const double lo = r_grid[best_index == 0 ? 0 : best_index - 1];
      const double hi = r_grid[std::min(best_index + 1, r_grid.size() - 1)];
      if (hi > lo) best = std::max(best, golden_maximum(objective, lo, hi));
      found = r_grid[best_index];
    }
    const double target = t * p.d1;
    report.results.push_back(
        make_result("legendre_maximum", relative_gap(best, target), tolerance, {s, t, found}));
  }
  // (v) lower bound.
  {
    const double lhs = lam * (a / s + b / t);
    const double rhs = 2.0 * std::sqrt(a * b);
    const double res = rhs > 0.0 ? std::max(0.0, (rhs - lhs) / rhs) : std::max(0.0, -lhs);
    report.results.push_back(make_result("am_gm_bound", res, tolerance, {s, t, a, b}));
  }
  return report;
}

PropertyReport check_concavity(const MeanFunction& m, std::size_t sample_count, std::uint64_t seed) {
  constexpr double kLo = 0.05, kHi = 20.0;
  constexpr double kInequalityTolerance = 1e-8;
  constexpr double kHessianTolerance = 1e-6;
  Rng rng(seed);

  auto draw = [&] { return rng.log_uniform(kLo, kHi); };

  double worst_ineq = 0.0, worst_hess = 0.0;
  std::vector<double> ineq_witness, hess_witness;

  for (std::size_t k = 0; k < sample_count; ++k) {
    double u[4];
    if (k % 4 == 3) {
      const double base = draw();
      for (double& x : u) x = base * (1.0 + 0.01 * rng.uniform(-1.0, 1.0));
    } else {
      for (double& x : u) x = draw();
    }
    const double l01 = m(u[0], u[1]);
    const double l12 = m(u[1], u[2]);
    const double l23 = m(u[2], u[3]);
    const MeanPartials p = m.partials(u[1], u[2]);
    const double lhs = -l01 + 2.0 * l12 - l23;
    const double rhs = p.d1 * (-u[0] + 2.0 * u[1] - u[2]) + p.d2 * (-u[1] + 2.0 * u[2] - u[3]);
    const double violation = (rhs - lhs) / std::abs(l12);
    if (violation > worst_ineq || !std::isfinite(violation)) {
      if (ineq_witness.empty() || violation > kInequalityTolerance)
        ineq_witness.assign(u, u + 4);
      worst_ineq = std::isfinite(violation) ? violation : std::numeric_limits<double>::infinity();
    }

    const double s = draw(), t = draw();
    // Steps proportional to each coordinate; the Hessian is reported in the
    // scaled form x_i x_j H_ij / Lambda, which has the same inertia as H.
    const double hs = 1e-4 * s, ht = 1e-4 * t;
    const double c = m(s, t);
    const double hss = (m(s + hs, t) - 2.0 * c + m(s - hs, t)) / (hs * hs) * (s * s / c);
    const double htt = (m(s, t + ht) - 2.0 * c + m(s, t - ht)) / (ht * ht) * (t * t / c);
    const double hst = (m(s + hs, t + ht) - m(s + hs, t - ht) - m(s - hs, t + ht) +
                        m(s - hs, t - ht)) /
                       (4.0 * hs * ht) * (s * t / c);
    const double mean_diag = 0.5 * (hss + htt);
    const double radius = std::hypot(0.5 * (hss - htt), hst);
    const double hess_violation = mean_diag + radius;
    if (hess_violation > worst_hess || !std::isfinite(hess_violation)) {
      if (hess_witness.empty() || hess_violation > kHessianTolerance) hess_witness = {s, t};
      worst_hess = std::isfinite(hess_violation) ? hess_violation : std::numeric_limits<double>::infinity();
    }
  }

  PropertyReport report;
  report.results.push_back(
      make_result("second_difference_inequality", worst_ineq, kInequalityTolerance, ineq_witness));
  report.results.push_back(make_result("hessian_negative_semidefinite", worst_hess, kHessianTolerance,
                                       hess_witness));
  return report;
}

}  // namespace fpconvex
