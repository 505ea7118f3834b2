#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace fpconvex::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitViolation = 2,        // a priori estimate violated, NotPSD certificate, failed property
  kExitGeodesicFailure = 3,  // neither shooting nor action minimization converged
};

struct RunOptions {
  std::filesystem::path out_dir = ".";
  std::uint64_t seed = 0;
  int jobs = 1;
};

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<std::filesystem::path> files;  // written outputs
  Json report;                               // contents of the JSON report
};

/// Runs the flow and the a priori monitor; writes simulate.csv and simulate.json.
CommandResult cmd_simulate(const Json& config, const RunOptions& options);
/// Certifies ~M - lambda L at one state or along a simulation; writes convexity.json.
CommandResult cmd_convexity(const Json& config, const RunOptions& options);
/// Solves a geodesic and checks displacement convexity; writes geodesic.csv and geodesic.json.
CommandResult cmd_geodesic(const Json& config, const RunOptions& options);
/// Tabulates lambda_h over a sequence of grids; writes lambda.json.
CommandResult cmd_lambda(const Json& config, const RunOptions& options);
/// Exact minor polynomial and witness search; writes counterexample.json.
CommandResult cmd_counterexample(const Json& config, const RunOptions& options);
/// Mean-function identities and concavity; writes verify-means.json.
CommandResult cmd_verify_means(const Json& config, const RunOptions& options);

const std::vector<std::string>& command_names();

/// Dispatches by name. Library and configuration errors are reported on
/// `err` and mapped to kExitError; geodesic failures to kExitGeodesicFailure.
int run_command(const std::string& name, const Json& config, const RunOptions& options, std::ostream& log,
                std::ostream& err);

}  // namespace fpconvex::cli
