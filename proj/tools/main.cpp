#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace {

const char* describe(const std::string& name) {
  if (name == "simulate") return "integrate the flow, write a CSV time series and check the a priori estimates";
  if (name == "convexity") return "certify the convexity matrix at a state or along a simulation";
  if (name == "geodesic") return "compute a geodesic and verify displacement convexity along it";
  if (name == "lambda") return "tabulate the convexity constant lambda_h over a sequence of grids";
  if (name == "counterexample") return "reconstruct the 5-node minor polynomial and search for a negative state";
  return "check the mean-function identities and concavity";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradient flows on finite chains and their displacement convexity"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int jobs = 1;
  app.add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory (created if missing)");
  app.add_option("--seed", seed, "seed for every random draw");
  app.add_option("--jobs", jobs, "worker threads for parameter sweeps")->check(CLI::PositiveNumber);

  for (const auto& name : fpconvex::cli::command_names()) app.add_subcommand(name, describe(name))->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fpconvex::cli::kExitError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  fpconvex::cli::Json config;
  try {
    config = fpconvex::cli::load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return fpconvex::cli::kExitError;
  }
  fpconvex::cli::RunOptions options;
  options.out_dir = out_dir;
  options.seed = seed;
  options.jobs = jobs;
  return fpconvex::cli::run_command(name, config, options, std::cout, std::cerr);
}
