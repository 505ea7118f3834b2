#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <Eigen/Core>

#include "fpconvex/convexity.hpp"

namespace fpconvex {

/// Setting of the counterexample: phi(s) = s^2 with U'(s) = 2s, so the edge
/// mean is the arithmetic mean (s + t) / 2, and w = 1. The minor
///   d_1 d_2 - c_1^2,
///   d_i = 2 L_i (phi'_i + phi'_{i+1}) + d1L_i (phi_{i-1} - 2 phi_i + phi_{i+1})
///         + d2L_i (phi_i - 2 phi_{i+1} + phi_{i+2}),
///   c_i = -phi'_{i+1} (L_i + L_{i+1}),
/// is a quartic form in (rho_0, ..., rho_4).
template <class T>
T counterexample_minor_of(const std::array<T, 5>& r) {
  const T half = T(1) / T(2);
  auto phi = [](const T& s) { return s * s; };
  auto dphi = [](const T& s) { return T(2) * s; };
  auto mean = [&](const T& s, const T& t) { return (s + t) * half; };
  auto d = [&](int i) {
    return T(2) * mean(r[i], r[i + 1]) * (dphi(r[i]) + dphi(r[i + 1])) +
           half * (phi(r[i - 1]) - T(2) * phi(r[i]) + phi(r[i + 1])) +
           half * (phi(r[i]) - T(2) * phi(r[i + 1]) + phi(r[i + 2]));
  };
  const T c1 = -dphi(r[2]) * (mean(r[1], r[2]) + mean(r[2], r[3]));
  return d(1) * d(2) - c1 * c1;
}

/// Minor at the first five entries of rho; ScopeError for fewer than five.
double counterexample_minor(const Eigen::VectorXd& rho);

using Rational = boost::rational<std::int64_t>;
using Monomial = std::array<int, 5>;  // exponents of rho_0..rho_4
using Polynomial = std::map<Monomial, Rational>;

/// Exact coefficients of the minor, recovered by tensor-product
/// interpolation on {0,...,4}^5 in rational arithmetic. Only nonzero
/// coefficients are kept.
Polynomial reconstruct_minor_polynomial();

/// The expansion as printed in the reference (20 monomials).
Polynomial printed_minor_expansion();

struct CoefficientComparison {
  Monomial monomial{};
  Rational printed{0};
  Rational reconstructed{0};
  bool matches() const { return printed == reconstructed; }
};

struct PolynomialComparison {
  std::vector<CoefficientComparison> rows;  // union of both supports, sorted by monomial
  std::size_t mismatches = 0;
  bool all_match() const noexcept { return mismatches == 0; }
  const CoefficientComparison* find(const Monomial& m) const;
};

PolynomialComparison compare_with_printed(const Polynomial& reconstructed, const Polynomial& printed);

std::string monomial_to_string(const Monomial& m);
std::string rational_to_string(const Rational& r);

struct CounterexampleWitness {
  bool found = false;
  std::size_t draws = 0;
  Eigen::VectorXd state;  // five entries summing to one
  double minor = 0.0;
  ConvexityReport report;  // certify(~M, L, 0) on the 4-interval chain
};

/// Random search for a state with a negative minor, emphasizing large rho_2.
/// The state is normalized to sum one (the minor is homogeneous) and the
/// full edge-space matrix of the 4-interval chain is certified at lambda = 0.
CounterexampleWitness search_counterexample(std::uint64_t seed, std::size_t max_draws = 100000);

}  // namespace fpconvex
