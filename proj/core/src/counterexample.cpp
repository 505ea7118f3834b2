#include "fpconvex/counterexample.hpp"

#include <sstream>

#include "fpconvex/error.hpp"
#include "fpconvex/random.hpp"

namespace fpconvex {

namespace {

constexpr int kNodes = 5;
constexpr int kDegree = 4;  // the minor has degree at most 4 in each variable
constexpr int kPoints = kDegree + 1;

using Matrix5 = std::array<std::array<Rational, kPoints>, kPoints>;

// Inverse of the Vandermonde matrix V_jk = j^k, j, k = 0..4, by Gauss-Jordan.
Matrix5 inverse_vandermonde() {
  Matrix5 a{}, inv{};
  for (int j = 0; j < kPoints; ++j) {
    Rational p(1);
    for (int k = 0; k < kPoints; ++k) {
      a[j][k] = p;
      p *= Rational(j);
      inv[j][k] = Rational(j == k ? 1 : 0);
    }
  }
  for (int col = 0; col < kPoints; ++col) {
    int pivot = col;
    while (a[pivot][col] == Rational(0)) ++pivot;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rational scale = a[col][col];
    for (int k = 0; k < kPoints; ++k) {
      a[col][k] /= scale;
      inv[col][k] /= scale;
    }
    for (int row = 0; row < kPoints; ++row) {
      if (row == col || a[row][col] == Rational(0)) continue;
      const Rational factor = a[row][col];
      for (int k = 0; k < kPoints; ++k) {
        a[row][k] -= factor * a[col][k];
        inv[row][k] -= factor * inv[col][k];
      }
    }
  }
  return inv;
}

std::size_t flat_index(const Monomial& idx) {
  std::size_t out = 0;
  for (int d = 0; d < kNodes; ++d) out = out * kPoints + static_cast<std::size_t>(idx[d]);
  return out;
}

Monomial unflatten(std::size_t flat) {
  Monomial idx{};
  for (int d = kNodes - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % kPoints);
    flat /= kPoints;
  }
  return idx;
}

}  // namespace

double counterexample_minor(const Eigen::VectorXd& rho) {
  if (rho.size() < kNodes) throw ScopeError("counterexample_minor: needs at least five components");
  return counterexample_minor_of<double>({rho[0], rho[1], rho[2], rho[3], rho[4]});
}

Polynomial reconstruct_minor_polynomial() {
  std::size_t total = 1;
  for (int d = 0; d < kNodes; ++d) total *= kPoints;

  // Values on the integer grid.
  std::vector<Rational> values(total);
  for (std::size_t f = 0; f < total; ++f) {
    const Monomial p = unflatten(f);
    std::array<Rational, kNodes> r;
    for (int d = 0; d < kNodes; ++d) r[d] = Rational(p[d]);
    values[f] = counterexample_minor_of<Rational>(r);
  }

  // Along each axis, map values at 0..4 to monomial coefficients.
  const Matrix5 inv = inverse_vandermonde();
  for (int axis = 0; axis < kNodes; ++axis) {
    std::vector<Rational> next(total);
    for (std::size_t f = 0; f < total; ++f) {
      Monomial idx = unflatten(f);
      const int k = idx[axis];
      Rational sum(0);
      for (int j = 0; j < kPoints; ++j) {
        idx[axis] = j;
        sum += inv[k][j] * values[flat_index(idx)];
      }
      next[f] = sum;
    }
    values.swap(next);
  }

  Polynomial poly;
  for (std::size_t f = 0; f < total; ++f)
    if (values[f] != Rational(0)) poly[unflatten(f)] = values[f];
  return poly;
}

Polynomial printed_minor_expansion() {
  using R = Rational;
  return Polynomial{
      {{2, 2, 0, 0, 0}, R(1, 2)},  {{2, 0, 2, 0, 0}, R(3, 2)},   {{2, 0, 1, 1, 0}, R(4)},
      {{2, 0, 0, 2, 0}, R(3, 2)},  {{2, 0, 0, 0, 2}, R(1, 2)},   {{1, 3, 0, 0, 0}, R(1)},
      {{1, 1, 2, 0, 0}, R(3)},     {{1, 1, 1, 1, 0}, R(8)},      {{1, 1, 0, 2, 0}, R(3)},
      {{1, 1, 0, 0, 2}, R(1)},     {{0, 4, 0, 0, 0}, R(1, 4)},   {{0, 2, 1, 1, 0}, R(2)},
      {{0, 2, 0, 2, 0}, R(3, 4)},  {{0, 2, 0, 0, 2}, R(1, 4)},   {{0, 1, 3, 0, 0}, R(-4)},
      {{0, 1, 2, 1, 0}, R(-2)},    {{0, 0, 4, 0, 0}, R(-13, 4)}, {{0, 0, 3, 1, 0}, R(-2)},
      {{0, 0, 2, 2, 0}, R(-1, 4)}, {{0, 0, 2, 0, 2}, R(1, 4)},
  };
}

const CoefficientComparison* PolynomialComparison::find(const Monomial& m) const {
  for (const auto& row : rows)
    if (row.monomial == m) return &row;
  return nullptr;
}

PolynomialComparison compare_with_printed(const Polynomial& reconstructed, const Polynomial& printed) {
  std::map<Monomial, CoefficientComparison> merged;
  for (const auto& [m, c] : printed) {
    merged[m].monomial = m;
    merged[m].printed = c;
  }
  for (const auto& [m, c] : reconstructed) {
    merged[m].monomial = m;
    merged[m].reconstructed = c;
  }
  PolynomialComparison out;
  for (const auto& [m, row] : merged) {
    out.rows.push_back(row);
    if (!row.matches()) ++out.mismatches;
  }
  return out;
}

std::string monomial_to_string(const Monomial& m) {
  std::ostringstream out;
  bool first = true;
  for (int d = 0; d < kNodes; ++d) {
    if (m[d] == 0) continue;
    if (!first) out << '*';
    first = false;
    out << "rho" << d;
    if (m[d] > 1) out << '^' << m[d];
  }
  if (first) out << '1';
  return out.str();
}

std::string rational_to_string(const Rational& r) {
  std::ostringstream out;
  out << r.numerator();
  if (r.denominator() != 1LL) out << '/' << r.denominator();
  return out.str();
}

CounterexampleWitness search_counterexample(std::uint64_t seed, std::size_t max_draws) {
  Rng rng(seed);
  CounterexampleWitness out;
  for (std::size_t draw = 1; draw <= max_draws; ++draw) {
    Eigen::VectorXd rho(kNodes);
    for (int i = 0; i < kNodes; ++i) rho[i] = rng.uniform(0.05, 1.0);
    rho[2] *= 1.0 + 4.0 * rng.uniform();
    rho /= rho.sum();
    const double minor = counterexample_minor(rho);
    if (minor < 0.0) {
      out.found = true;
      out.draws = draw;
      out.state = rho;
      out.minor = minor;
      const double h = 1.0 / (kNodes - 1);
      const TridiagonalMatrix m = assemble_quotient_tilde_m(power_function(2.0), MeanFunction::power(2.0), rho, h);
      Eigen::VectorXd lambda_edges(kNodes - 1);
      for (int k = 0; k < kNodes - 1; ++k) lambda_edges[k] = 0.5 * (rho[k] + rho[k + 1]);
      out.report = certify(m, lambda_edges, 0.0);
      return out;
    }
  }
  out.draws = max_draws;
  return out;
}

}  // namespace fpconvex
