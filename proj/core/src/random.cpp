#include "fpconvex/random.hpp"

#include <cmath>
#include <numbers>

#include "fpconvex/error.hpp"

namespace fpconvex {

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::VectorXd random_interior_state(Eigen::Index size, Rng& rng, double spread) {
  if (size < 1) throw ConfigurationError("random_interior_state: size must be positive");
  if (!(spread >= 0.0 && spread < 1.0))
    throw ConfigurationError("random_interior_state: spread must lie in [0, 1)");
  Eigen::VectorXd rho(size);
  for (Eigen::Index i = 0; i < size; ++i) rho[i] = 1.0 + spread * rng.uniform(-1.0, 1.0);
  return rho / rho.sum();
}

Eigen::VectorXd uniform_state(Eigen::Index size) {
  if (size < 1) throw ConfigurationError("uniform_state: size must be positive");
  return Eigen::VectorXd::Constant(size, 1.0 / static_cast<double>(size));
}

}  // namespace fpconvex
