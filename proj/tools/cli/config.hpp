#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "fpconvex/error.hpp"
#include "fpconvex/flow.hpp"
#include "fpconvex/means.hpp"
#include "fpconvex/random.hpp"

namespace fpconvex::cli {

using Json = nlohmann::ordered_json;

/// Invalid configuration; the message starts with the path of the offending field.
class ConfigError : public ConfigurationError {
 public:
  ConfigError(const std::string& path, const std::string& what) : ConfigurationError(path + ": " + what) {}
};

/// Reads a JSON config file. An empty path gives an empty object.
Json load_config(const std::filesystem::path& path);

/// Read-only view of one object in a config, carrying its path for messages.
class ConfigNode {
 public:
  ConfigNode(const Json& value, std::string path);

  const std::string& path() const noexcept { return path_; }
  const Json& value() const noexcept { return *value_; }
  bool has(const std::string& key) const;
  ConfigNode child(const std::string& key) const;
  /// Throws ConfigError naming the first key not in `allowed`.
  void allow_only(std::initializer_list<const char*> allowed) const;

  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  long long integer(const std::string& key) const;
  long long integer(const std::string& key, long long fallback) const;
  std::string string(const std::string& key) const;
  std::string string(const std::string& key, const std::string& fallback) const;
  bool boolean(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<long long> integers(const std::string& key) const;

  std::string path_of(const std::string& key) const { return path_ + "." + key; }

 private:
  const Json* value_;
  std::string path_;
};

/// Grid, potential and nonlinearities shared by most subcommands.
///   n:          number of intervals (>= 2, or >= 1 where allowed)
///   path:       "fokker-planck" (default) or "heat"
///   potential:  {kind: "zero" | "quadratic", gamma}
///   phi:        {kind: "identity" | "power", alpha}   (fokker-planck path)
///   f:          {kind: "boltzmann" | "power", alpha}  (heat path)
struct SystemConfig {
  int n = 0;
  FlowSystem::Path path = FlowSystem::Path::FokkerPlanck;
  Potential potential = Potential::zero();
  SmoothFunction phi = identity_function();
  SmoothFunction f = boltzmann_density();

  FlowSystem build() const;
  std::string path_name() const;
};

SystemConfig parse_system(const ConfigNode& node, int min_n = 2);
SmoothFunction parse_phi(const ConfigNode& node);
SmoothFunction parse_density(const ConfigNode& node);
MeanFunction parse_mean(const ConfigNode& node);
Potential parse_potential(const ConfigNode& node);

/// State description:
///   {kind: "uniform"}
///   {kind: "explicit", values: [...]}                 (positive, n+1 entries)
///   {kind: "gaussian-bump", center, width, base}      (base + exp(-(x-center)^2 / (2 width^2)))
///   {kind: "random", spread}                          (drawn from the run seed)
/// Every state except "explicit" is normalized to unit mass.
struct StateSpec {
  std::string kind = "uniform";
  std::vector<double> values;
  double center = 0.5;
  double width = 0.1;
  double base = 0.1;
  double spread = 0.8;
  std::string path = "state";  // config path, for messages

  Eigen::VectorXd make(const Grid& grid, Rng& rng) const;
};

StateSpec parse_state(const ConfigNode& node);

}  // namespace fpconvex::cli
