#include "fpconvex/markov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpconvex/error.hpp"

namespace fpconvex {

namespace {

constexpr double kInvariantTolerance = 1e-12;

Grid make_grid(int n) {
  Grid g;
  g.n = n;
  g.h = 1.0 / n;
  g.x.resize(n + 1);
  for (int i = 0; i <= n; ++i) g.x[i] = static_cast<double>(i) / n;
  return g;
}

}  // namespace

Grid build_grid(int n) {
  if (n < 2) {
    std::ostringstream msg;
    msg << "build_grid: need at least 2 intervals (got " << n << ")";
    throw ConfigurationError(msg.str());
  }
  return make_grid(n);
}

Grid two_point_grid() { return make_grid(1); }

Potential Potential::zero() { return {}; }

Potential Potential::quadratic(double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma))
    throw ConfigurationError("potential: gamma must be a nonnegative finite number");
  Potential p;
  p.kind = Kind::Quadratic;
  p.gamma = gamma;
  return p;
}

Potential Potential::custom_potential(std::function<double(double)> v) {
  if (!v) throw ConfigurationError("potential: custom potential needs a callable");
  Potential p;
  p.kind = Kind::Custom;
  p.custom = std::move(v);
  return p;
}

double Potential::operator()(double x) const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Quadratic:
      return 0.5 * gamma * x * x;
    case Kind::Custom:
      return custom(x);
  }
  return 0.0;
}

std::string Potential::name() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Zero:
      out << "zero";
      break;
    case Kind::Quadratic:
      out << "quadratic(" << gamma << ")";
      break;
    case Kind::Custom:
      out << "custom";
      break;
  }
  return out.str();
}

Weights build_weights(const Grid& grid, const Potential& potential) {
  Weights out;
  out.potential = potential;
  out.w.resize(grid.nodes());
  for (Eigen::Index i = 0; i < grid.nodes(); ++i) {
    const double v = potential(grid.x[i]);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "build_weights: V(x_" << i << ") is not finite";
      throw DomainError(msg.str());
    }
    out.w[i] = potential.is_zero() ? 1.0 : std::exp(-v);
    if (!(out.w[i] > 0.0)) throw DomainError("build_weights: weight underflow");
  }
  out.kappa.resize(grid.edges());
  for (Eigen::Index k = 0; k < grid.edges(); ++k) out.kappa[k] = std::sqrt(out.w[k] * out.w[k + 1]);
  return out;
}

Eigen::VectorXd DiscreteGradient::apply(const Eigen::VectorXd& v) const {
  if (v.size() != n_ + 1) throw SizeMismatchError("DiscreteGradient::apply: expected n+1 entries");
  return (v.head(n_) - v.tail(n_)) / h_;
}

Eigen::VectorXd DiscreteGradient::apply_transpose(const Eigen::VectorXd& y) const {
  if (y.size() != n_) throw SizeMismatchError("DiscreteGradient::apply_transpose: expected n entries");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_ + 1);
  out.head(n_) += y;
  out.tail(n_) -= y;
  return out / h_;
}

Eigen::MatrixXd DiscreteGradient::dense() const {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n_, n_ + 1);
  for (int k = 0; k < n_; ++k) {
    g(k, k) = 1.0 / h_;
    g(k, k + 1) = -1.0 / h_;
  }
  return g;
}

Eigen::VectorXd RateMatrix::apply(const Eigen::VectorXd& v) const {
  const Eigen::Index m = size();
  if (v.size() != m) throw SizeMismatchError("RateMatrix::apply: size mismatch");
  Eigen::VectorXd out = diagonal.cwiseProduct(v);
  out.tail(m - 1) += lower.cwiseProduct(v.head(m - 1));
  out.head(m - 1) += upper.cwiseProduct(v.tail(m - 1));
  return out;
}

Eigen::MatrixXd RateMatrix::dense() const {
  const Eigen::Index m = size();
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    q(i, i) = diagonal[i];
    if (i > 0) q(i, i - 1) = lower[i - 1];
    if (i + 1 < m) q(i, i + 1) = upper[i];
  }
  return q;
}

RateMatrix build_rate_matrix(const Grid& grid, const Weights& weights) {
  const Eigen::Index m = grid.nodes();
  const Eigen::Index n = grid.edges();
  if (weights.w.size() != m || weights.kappa.size() != n)
    throw SizeMismatchError("build_rate_matrix: weights do not match the grid");
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  const auto& w = weights.w;
  const auto& kappa = weights.kappa;

  RateMatrix q;
  q.lower.resize(n);
  q.upper.resize(n);
  q.diagonal = Eigen::VectorXd::Zero(m);
  for (Eigen::Index k = 0; k < n; ++k) {
    // Edge k couples nodes k and k+1.
    q.upper[k] = inv_h2 * kappa[k] / w[k + 1];
    q.lower[k] = inv_h2 * kappa[k] / w[k];
    q.diagonal[k] -= inv_h2 * kappa[k] / w[k];
    q.diagonal[k + 1] -= inv_h2 * kappa[k] / w[k + 1];
  }

  double scale = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) scale = std::max(scale, std::abs(q.diagonal[i]));
  for (Eigen::Index k = 0; k < n; ++k) {
    if (!(q.upper[k] >= 0.0) || !(q.lower[k] >= 0.0))
      throw AssemblyError("build_rate_matrix: negative off-diagonal rate");
  }

  // Column j collects Q(j,j), Q(j-1,j) = upper[j-1] and Q(j+1,j) = lower[j].
  double column = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    double sum = q.diagonal[j];
    if (j > 0) sum += q.upper[j - 1];
    if (j + 1 < m) sum += q.lower[j];
    column = std::max(column, std::abs(sum));
  }
  // Q(k, k+1) w_{k+1} against Q(k+1, k) w_k.
  double balance = 0.0;
  for (Eigen::Index k = 0; k < n; ++k)
    balance = std::max(balance, std::abs(q.upper[k] * w[k + 1] - q.lower[k] * w[k]));
  const Eigen::VectorXd qw = q.apply(w);

  q.column_sum_residual = column / scale;
  q.detailed_balance_residual = balance / (scale * w.maxCoeff());
  q.stationarity_residual = qw.cwiseAbs().maxCoeff() / (scale * w.maxCoeff());

  if (q.column_sum_residual > kInvariantTolerance || q.detailed_balance_residual > kInvariantTolerance ||
      q.stationarity_residual > kInvariantTolerance) {
    std::ostringstream msg;
    msg << "build_rate_matrix: invariant violated (column sums " << q.column_sum_residual
        << ", detailed balance " << q.detailed_balance_residual << ", Qw " << q.stationarity_residual
        << ")";
    throw AssemblyError(msg.str());
  }
  return q;
}

}  // namespace fpconvex
