// SPDX-License-Identifier: Apache-2.0

#ifndef BIOT_CLI_HPP
#define BIOT_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "biot/verify.hpp"

namespace biot
{

/// Invalid or missing configuration entry.
class ConfigError : public std::runtime_error
{
public:
  ConfigError(std::string key, const std::string &message)
    : std::runtime_error(key + ": " + message), key_(std::move(key))
  {
  }
  const std::string &key() const { return key_; }

private:
  std::string key_;
};

enum class RunMode
{
  Solve,
  TimeLoop,
  Convergence,
  Sweep
};

struct RunConfig
{
  RunMode mode = RunMode::Solve;
  int mesh_n = 4;
  std::string mesh_file;
  int family = 2;
  Method method = Method::FourField;
  MaterialParams params;
  /// tag -> (mechanics, flow); overrides the case's assignment
  std::map<std::string, std::pair<MechanicsBoundary, FlowBoundary>> bc;
  std::string case_name = "trig";
  int levels = 4;
  LinearSolver solver = LinearSolver::Direct;
  double tol = 1e-10;
  int max_iter = 1000;
  std::uint64_t seed = 20220517;
  int time_steps = 1;
  TimeScheme time_scheme = TimeScheme::BackwardEuler;
  std::vector<int> sweep_levels{4, 8, 16};
  std::map<std::string, std::vector<double>> sweep_values;
  std::string out_dir = "out";
  bool verbose = false;
};

/// Parses "key = value" lines; '#' starts a comment. Throws ConfigError
/// naming the offending key.
RunConfig parse_config(std::istream &in);
RunConfig parse_config_file(const std::string &path);

/// Canonical key=value listing of the effective configuration.
std::string echo_config(const RunConfig &config);

/// Exit status of run().
enum ExitCode : int
{
  ExitSuccess = 0,
  ExitConfigError = 2,
  ExitSolverFailure = 3
};

/// Executes one run and writes its artifacts to config.out_dir. Progress goes
/// to \p log, diagnostics to \p err.
int run(const RunConfig &config, std::ostream &log, std::ostream &err);

/// Command-line entry: biot-mrfem <config-path> [--out DIR] [--seed N] [--verbose]
int cli_main(int argc, char **argv);

}  // namespace biot

#endif  // BIOT_CLI_HPP
