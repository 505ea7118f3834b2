#include "fpconvex/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fpconvex/error.hpp"

namespace fpconvex {

namespace {

void require_shape(const Eigen::VectorXd& diagonal, const Eigen::VectorXd& off) {
  if (diagonal.size() == 0) throw SizeMismatchError("tridiagonal: empty matrix");
  if (off.size() != diagonal.size() - 1) throw SizeMismatchError("tridiagonal: off-diagonal has the wrong size");
}

double gershgorin_radius(const Eigen::VectorXd& diagonal, const Eigen::VectorXd& off) {
  double r = 0.0;
  const Eigen::Index n = diagonal.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = std::abs(diagonal[i]);
    if (i > 0) row += std::abs(off[i - 1]);
    if (i + 1 < n) row += std::abs(off[i]);
    r = std::max(r, row);
  }
  return r;
}

}  // namespace

Eigen::MatrixXd TridiagonalMatrix::dense() const {
  const Eigen::Index n = size();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = scale * diagonal[i];
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = scale * off[i];
  }
  return m;
}

Eigen::VectorXd TridiagonalMatrix::apply(const Eigen::VectorXd& v) const {
  const Eigen::Index n = size();
  if (v.size() != n) throw SizeMismatchError("TridiagonalMatrix::apply: size mismatch");
  Eigen::VectorXd out = diagonal.cwiseProduct(v);
  if (n > 1) {
    out.head(n - 1) += off.cwiseProduct(v.tail(n - 1));
    out.tail(n - 1) += off.cwiseProduct(v.head(n - 1));
  }
  return scale * out;
}

int sturm_count(const Eigen::VectorXd& diagonal, const Eigen::VectorXd& off, double x) {
  require_shape(diagonal, off);
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  int count = 0;
  double q = diagonal[0] - x;
  for (Eigen::Index i = 0;; ++i) {
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
    if (i + 1 >= diagonal.size()) break;
    q = diagonal[i + 1] - x - off[i] * off[i] / q;
  }
  return count;
}

EigenBracket smallest_eigenvalue(const Eigen::VectorXd& diagonal, const Eigen::VectorXd& off, double rel_tol) {
  require_shape(diagonal, off);
  const double radius = gershgorin_radius(diagonal, off);
  // Gershgorin lower bound; the smallest diagonal entry is a Rayleigh quotient.
  double lo = std::numeric_limits<double>::infinity();
  const Eigen::Index n = diagonal.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(off[i - 1]);
    if (i + 1 < n) r += std::abs(off[i]);
    lo = std::min(lo, diagonal[i] - r);
  }
  double hi = diagonal.minCoeff();
  // Widen slightly so the Sturm count at the ends is unambiguous.
  const double pad = 2.0 * std::numeric_limits<double>::epsilon() * std::max(radius, 1e-300);
  lo -= pad;
  hi += pad;
  const double target = std::max(rel_tol * radius, std::numeric_limits<double>::min());
  for (int it = 0; it < 2000 && hi - lo > target; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(diagonal, off, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return {lo, hi};
}

Eigen::VectorXd thomas_solve(const Eigen::VectorXd& diagonal, const Eigen::VectorXd& off, const Eigen::VectorXd& rhs) {
  require_shape(diagonal, off);
  const Eigen::Index n = diagonal.size();
  if (rhs.size() != n) throw SizeMismatchError("thomas_solve: rhs has the wrong size");
  Eigen::VectorXd c(n), d(n);
  double denom = diagonal[0];
  if (denom == 0.0) throw Error("thomas_solve: zero pivot");
  c[0] = n > 1 ? off[0] / denom : 0.0;
  d[0] = rhs[0] / denom;
  for (Eigen::Index i = 1; i < n; ++i) {
    denom = diagonal[i] - off[i - 1] * c[i - 1];
    if (denom == 0.0) throw Error("thomas_solve: zero pivot");
    c[i] = i + 1 < n ? off[i] / denom : 0.0;
    d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / denom;
  }
  Eigen::VectorXd x(n);
  x[n - 1] = d[n - 1];
  for (Eigen::Index i = n - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

Eigen::VectorXd smallest_eigenvector(const Eigen::VectorXd& diagonal, const Eigen::VectorXd& off,
                                     const EigenBracket& bracket) {
  require_shape(diagonal, off);
  const Eigen::Index n = diagonal.size();
  const double radius = std::max(gershgorin_radius(diagonal, off), 1e-300);
  const double shift = bracket.lower - 1e-13 * radius;
  const Eigen::VectorXd shifted = diagonal.array() - shift;

  // Deterministic, non-symmetric start so no eigenvector is orthogonal to it.
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(1.0 + 3.0 * static_cast<double>(i));
  v.normalize();
  for (int it = 0; it < 8; ++it) {
    Eigen::VectorXd next = thomas_solve(shifted, off, v);
    const double norm = next.norm();
    if (!std::isfinite(norm) || norm == 0.0) break;
    v = next / norm;
  }
  // Fix the sign so the largest component is positive.
  Eigen::Index arg;
  v.cwiseAbs().maxCoeff(&arg);
  if (v[arg] < 0.0) v = -v;
  return v;
}

}  // namespace fpconvex
