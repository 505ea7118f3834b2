#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace fpconvex {

/// Seeded 64-bit generator with portable real-valued draws.
///
/// The standard distributions are implementation-defined, so the floating
/// point draws are built directly from the raw 64-bit output. Identical seeds
/// give identical sequences on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// log-uniform on [lo, hi], lo > 0.
  double log_uniform(double lo, double hi);
  /// Standard normal (Box-Muller).
  double normal();

 private:
  std::mt19937_64 engine_;
};

/// Point of X_n with entries proportional to 1 + spread * U(-1, 1).
/// spread must lie in [0, 1).
Eigen::VectorXd random_interior_state(Eigen::Index size, Rng& rng, double spread = 0.8);

/// Uniform point of X_n (all entries 1/size).
Eigen::VectorXd uniform_state(Eigen::Index size);

}  // namespace fpconvex
