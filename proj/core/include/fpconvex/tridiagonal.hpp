#pragma once

#include <Eigen/Core>

namespace fpconvex {

/// Symmetric tridiagonal matrix scale * T, T = tridiag(off, diagonal, off).
///
/// The displacement-convexity matrices are naturally written as 1/h^2 times
/// a matrix of O(1) coefficients, so the coefficients and the factor are kept
/// apart.
struct TridiagonalMatrix {
  Eigen::VectorXd diagonal;  // a_1..a_n
  Eigen::VectorXd off;       // b_1..b_{n-1}
  double scale = 1.0;

  Eigen::Index size() const noexcept { return diagonal.size(); }
  /// scale * T as a dense matrix.
  Eigen::MatrixXd dense() const;
  /// scale * T * v.
  Eigen::VectorXd apply(const Eigen::VectorXd& v) const;
};

/// Number of eigenvalues strictly below x (Sturm sequence / LDL^T inertia).
int sturm_count(const Eigen::VectorXd& diagonal, const Eigen::VectorXd& off, double x);

/// Smallest eigenvalue by bisection on the Sturm count, to an absolute
/// accuracy of about `rel_tol` times the Gershgorin radius.
struct EigenBracket {
  double lower = 0.0;  // no eigenvalue below this
  double upper = 0.0;  // at least one eigenvalue at or below this
  double value() const noexcept { return 0.5 * (lower + upper); }
};
EigenBracket smallest_eigenvalue(const Eigen::VectorXd& diagonal, const Eigen::VectorXd& off,
                                 double rel_tol = 4e-16);

/// Unit eigenvector for the smallest eigenvalue by inverse iteration with a
/// shift just below `bracket.lower`, where T - shift is positive definite and
/// the Thomas algorithm is stable.
Eigen::VectorXd smallest_eigenvector(const Eigen::VectorXd& diagonal, const Eigen::VectorXd& off,
                                     const EigenBracket& bracket);

/// Solves tridiag(off, diagonal, off) x = rhs without pivoting.
Eigen::VectorXd thomas_solve(const Eigen::VectorXd& diagonal, const Eigen::VectorXd& off,
                             const Eigen::VectorXd& rhs);

}  // namespace fpconvex
