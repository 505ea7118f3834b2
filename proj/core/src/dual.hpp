#pragma once

// Forward-mode dual numbers: just enough arithmetic to differentiate the
// stable closed forms used by the mean functions.

#include <cmath>

namespace fpconvex::detail {

struct Dual {
  double v = 0.0;  // value
  double d = 0.0;  // derivative

  constexpr Dual() = default;
  constexpr Dual(double value, double deriv = 0.0) : v(value), d(deriv) {}
};

constexpr Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
constexpr Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
constexpr Dual operator-(Dual a) { return {-a.v, -a.d}; }
constexpr Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
constexpr Dual operator/(Dual a, Dual b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

inline Dual sqrt(Dual a) {
  const double r = std::sqrt(a.v);
  return {r, a.d / (2.0 * r)};
}
inline Dual log(Dual a) { return {std::log(a.v), a.d / a.v}; }
inline Dual sinh(Dual a) { return {std::sinh(a.v), a.d * std::cosh(a.v)}; }
inline Dual atanh(Dual a) { return {std::atanh(a.v), a.d / (1.0 - a.v * a.v)}; }
inline Dual pow(Dual a, double p) {
  const double r = std::pow(a.v, p);
  return {r, a.d * p * std::pow(a.v, p - 1.0)};
}

inline double value_of(double x) { return x; }
inline double value_of(Dual x) { return x.v; }

using std::atanh;
using std::log;
using std::pow;
using std::sinh;
using std::sqrt;

}  // namespace fpconvex::detail
