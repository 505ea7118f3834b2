#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

namespace fpconvex {

/// Uniform grid x_i = i h on [0, 1] with n intervals and n + 1 nodes.
struct Grid {
  int n = 0;
  double h = 0.0;
  Eigen::VectorXd x;

  Eigen::Index nodes() const noexcept { return n + 1; }
  Eigen::Index edges() const noexcept { return n; }
};

/// Uniform grid with n >= 2 intervals; throws ConfigurationError otherwise.
Grid build_grid(int n);

/// The two-node chain {0, 1} with h = 1. Only the geodesic code accepts it;
/// the tridiagonal machinery needs at least two edges.
Grid two_point_grid();

/// Confining potential V on [0, 1].
struct Potential {
  enum class Kind { Zero, Quadratic, Custom };

  Kind kind = Kind::Zero;
  double gamma = 0.0;                    // Quadratic: V(x) = gamma x^2 / 2
  std::function<double(double)> custom;  // Custom: V(x)

  static Potential zero();
  static Potential quadratic(double gamma);
  static Potential custom_potential(std::function<double(double)> v);

  double operator()(double x) const;
  bool is_zero() const noexcept { return kind == Kind::Zero || (kind == Kind::Quadratic && gamma == 0.0); }
  std::string name() const;
};

/// Stationary weights w_i = exp(-V(x_i)) and edge weights kappa_i = sqrt(w_i w_{i+1}).
struct Weights {
  Potential potential;
  Eigen::VectorXd w;      // n + 1 entries
  Eigen::VectorXd kappa;  // n entries
};

Weights build_weights(const Grid& grid, const Potential& potential);

/// Forward difference G: R^{n+1} -> R^n, (G v)_k = (v_k - v_{k+1}) / h.
class DiscreteGradient {
 public:
  explicit DiscreteGradient(const Grid& grid) : n_(grid.n), h_(grid.h) {}

  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  /// G^T: R^n -> R^{n+1}, (G^T y)_i = (y_i - y_{i-1}) / h with y_{-1} = y_n = 0.
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& y) const;
  Eigen::MatrixXd dense() const;

 private:
  int n_;
  double h_;
};

/// Q = -G^T diag(kappa) G diag(1/w), stored by its three bands.
///
/// For w = 1 this is the no-flux second difference h^{-2}(v_{i-1} - 2 v_i + v_{i+1}).
struct RateMatrix {
  Eigen::VectorXd lower;     // Q(i, i-1), i = 1..n, stored at index i-1
  Eigen::VectorXd diagonal;  // Q(i, i)
  Eigen::VectorXd upper;     // Q(i, i+1), i = 0..n-1
  double detailed_balance_residual = 0.0;
  double column_sum_residual = 0.0;
  double stationarity_residual = 0.0;  // max |Q w|

  Eigen::Index size() const noexcept { return diagonal.size(); }
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd dense() const;
};

/// Builds Q and checks its invariants (off-diagonal signs, vanishing column
/// sums, detailed balance, Q w = 0). Residuals are relative to the largest
/// entry of Q (and of Q w's terms); anything above 1e-12 raises AssemblyError.
RateMatrix build_rate_matrix(const Grid& grid, const Weights& weights);

}  // namespace fpconvex
