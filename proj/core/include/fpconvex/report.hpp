#pragma once

#include <string>
#include <vector>

namespace fpconvex {

/// Outcome of one numerical check.
struct PropertyResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::vector<double> witness;  // offending arguments when !passed
};

/// A list of checks; several results may share a name.
struct PropertyReport {
  std::vector<PropertyResult> results;

  bool all_passed() const;
  const PropertyResult* find(const std::string& name) const;
  double worst_residual(const std::string& name) const;
};

}  // namespace fpconvex
