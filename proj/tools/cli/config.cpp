#include "config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fpconvex::cli {

Json load_config(const std::filesystem::path& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open config file");
  Json out;
  try {
    out = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string(), std::string("malformed JSON: ") + e.what());
  }
  if (!out.is_object()) throw ConfigError("config", "top level must be an object");
  return out;
}

ConfigNode::ConfigNode(const Json& value, std::string path) : value_(&value), path_(std::move(path)) {
  if (!value.is_object()) throw ConfigError(path_, "expected an object");
}

bool ConfigNode::has(const std::string& key) const { return value_->contains(key) && !(*value_)[key].is_null(); }

ConfigNode ConfigNode::child(const std::string& key) const {
  if (!has(key)) throw ConfigError(path_of(key), "missing field");
  return ConfigNode((*value_)[key], path_of(key));
}

void ConfigNode::allow_only(std::initializer_list<const char*> allowed) const {
  for (const auto& item : value_->items()) {
    bool known = false;
    for (const char* a : allowed) known = known || item.key() == a;
    if (!known) throw ConfigError(path_of(item.key()), "unknown field");
  }
}

double ConfigNode::number(const std::string& key) const {
  if (!has(key)) throw ConfigError(path_of(key), "missing field");
  const Json& v = (*value_)[key];
  if (!v.is_number()) throw ConfigError(path_of(key), "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path_of(key), "expected a finite number");
  return x;
}

double ConfigNode::number(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

long long ConfigNode::integer(const std::string& key) const {
  if (!has(key)) throw ConfigError(path_of(key), "missing field");
  const Json& v = (*value_)[key];
  if (!v.is_number_integer()) throw ConfigError(path_of(key), "expected an integer");
  return v.get<long long>();
}

long long ConfigNode::integer(const std::string& key, long long fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string ConfigNode::string(const std::string& key) const {
  if (!has(key)) throw ConfigError(path_of(key), "missing field");
  const Json& v = (*value_)[key];
  if (!v.is_string()) throw ConfigError(path_of(key), "expected a string");
  return v.get<std::string>();
}

std::string ConfigNode::string(const std::string& key, const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

bool ConfigNode::boolean(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const Json& v = (*value_)[key];
  if (!v.is_boolean()) throw ConfigError(path_of(key), "expected true or false");
  return v.get<bool>();
}

std::vector<double> ConfigNode::numbers(const std::string& key) const {
  if (!has(key)) throw ConfigError(path_of(key), "missing field");
  const Json& v = (*value_)[key];
  if (!v.is_array()) throw ConfigError(path_of(key), "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number() || !std::isfinite(v[i].get<double>()))
      throw ConfigError(path_of(key) + "[" + std::to_string(i) + "]", "expected a finite number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

std::vector<long long> ConfigNode::integers(const std::string& key) const {
  if (!has(key)) throw ConfigError(path_of(key), "missing field");
  const Json& v = (*value_)[key];
  if (!v.is_array()) throw ConfigError(path_of(key), "expected an array of integers");
  std::vector<long long> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer())
      throw ConfigError(path_of(key) + "[" + std::to_string(i) + "]", "expected an integer");
    out.push_back(v[i].get<long long>());
  }
  return out;
}

Potential parse_potential(const ConfigNode& node) {
  node.allow_only({"kind", "gamma"});
  const std::string kind = node.string("kind", "zero");
  if (kind == "zero") return Potential::zero();
  if (kind == "quadratic") {
    const double gamma = node.number("gamma");
    if (!(gamma >= 0.0)) throw ConfigError(node.path_of("gamma"), "must be nonnegative");
    return Potential::quadratic(gamma);
  }
  throw ConfigError(node.path_of("kind"), "expected \"zero\" or \"quadratic\"");
}

SmoothFunction parse_phi(const ConfigNode& node) {
  node.allow_only({"kind", "alpha"});
  const std::string kind = node.string("kind", "identity");
  if (kind == "identity") return identity_function();
  if (kind == "power") {
    const double alpha = node.number("alpha");
    if (!(alpha > 0.0)) throw ConfigError(node.path_of("alpha"), "must be positive");
    return power_function(alpha);
  }
  throw ConfigError(node.path_of("kind"), "expected \"identity\" or \"power\"");
}

SmoothFunction parse_density(const ConfigNode& node) {
  node.allow_only({"kind", "alpha"});
  const std::string kind = node.string("kind", "boltzmann");
  if (kind == "boltzmann") return boltzmann_density();
  if (kind == "power") {
    const double alpha = node.number("alpha");
    if (!(alpha > 1.0)) throw ConfigError(node.path_of("alpha"), "must exceed 1");
    return power_function(alpha);
  }
  throw ConfigError(node.path_of("kind"), "expected \"boltzmann\" or \"power\"");
}

MeanFunction parse_mean(const ConfigNode& node) {
  node.allow_only({"kind", "alpha", "f"});
  const std::string kind = node.string("kind");
  if (kind == "logarithmic") return MeanFunction::logarithmic();
  if (kind == "power") {
    const double alpha = node.number("alpha");
    if (!(alpha > 0.0)) throw ConfigError(node.path_of("alpha"), "must be positive");
    return MeanFunction::power(alpha);
  }
  if (kind == "f-mean") return MeanFunction::f_mean(parse_density(node.child("f")));
  throw ConfigError(node.path_of("kind"), "expected \"logarithmic\", \"power\" or \"f-mean\"");
}

FlowSystem SystemConfig::build() const {
  const Grid grid = n == 1 ? two_point_grid() : build_grid(n);
  if (path == FlowSystem::Path::Heat) return FlowSystem::heat(grid, f);
  return FlowSystem::fokker_planck(grid, potential, phi);
}

std::string SystemConfig::path_name() const {
  return path == FlowSystem::Path::Heat ? "heat" : "fokker-planck";
}

SystemConfig parse_system(const ConfigNode& node, int min_n) {
  SystemConfig out;
  const long long n = node.integer("n");
  if (n < min_n || n > 1000000) throw ConfigError(node.path_of("n"), "must be at least " + std::to_string(min_n));
  out.n = static_cast<int>(n);
  const std::string path = node.string("path", "fokker-planck");
  if (path == "heat") {
    out.path = FlowSystem::Path::Heat;
    if (node.has("phi")) throw ConfigError(node.path_of("phi"), "the heat path uses phi = id; set f instead");
    if (node.has("potential")) {
      out.potential = parse_potential(node.child("potential"));
      if (!out.potential.is_zero()) throw ConfigError(node.path_of("potential"), "the heat path needs a zero potential");
    }
    if (node.has("f")) out.f = parse_density(node.child("f"));
  } else if (path == "fokker-planck") {
    if (node.has("f")) throw ConfigError(node.path_of("f"), "only used by the heat path");
    if (node.has("potential")) out.potential = parse_potential(node.child("potential"));
    if (node.has("phi")) out.phi = parse_phi(node.child("phi"));
  } else {
    throw ConfigError(node.path_of("path"), "expected \"fokker-planck\" or \"heat\"");
  }
  return out;
}

StateSpec parse_state(const ConfigNode& node) {
  node.allow_only({"kind", "values", "center", "width", "base", "spread"});
  StateSpec out;
  out.path = node.path();
  out.kind = node.string("kind", "uniform");
  if (out.kind == "uniform") {
  } else if (out.kind == "explicit") {
    out.values = node.numbers("values");
    for (std::size_t i = 0; i < out.values.size(); ++i)
      if (!(out.values[i] > 0.0))
        throw ConfigError(node.path_of("values") + "[" + std::to_string(i) + "]", "must be positive");
  } else if (out.kind == "gaussian-bump") {
    out.center = node.number("center", out.center);
    out.width = node.number("width", out.width);
    out.base = node.number("base", out.base);
    if (!(out.width > 0.0)) throw ConfigError(node.path_of("width"), "must be positive");
    if (!(out.base > 0.0)) throw ConfigError(node.path_of("base"), "must be positive");
  } else if (out.kind == "random") {
    out.spread = node.number("spread", out.spread);
    if (!(out.spread >= 0.0 && out.spread < 1.0)) throw ConfigError(node.path_of("spread"), "must lie in [0, 1)");
  } else {
    throw ConfigError(node.path_of("kind"), "expected \"uniform\", \"explicit\", \"gaussian-bump\" or \"random\"");
  }
  return out;
}

Eigen::VectorXd StateSpec::make(const Grid& grid, Rng& rng) const {
  const Eigen::Index m = grid.nodes();
  if (kind == "explicit") {
    if (static_cast<Eigen::Index>(values.size()) != m)
      throw ConfigError(path + ".values", "expected " + std::to_string(m) + " entries");
    return Eigen::Map<const Eigen::VectorXd>(values.data(), m);
  }
  if (kind == "random") return random_interior_state(m, rng, spread);
  if (kind == "gaussian-bump") {
    Eigen::VectorXd rho(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double z = (grid.x[i] - center) / width;
      rho[i] = base + std::exp(-0.5 * z * z);
    }
    return rho / rho.sum();
  }
  return uniform_state(m);
}

}  // namespace fpconvex::cli
