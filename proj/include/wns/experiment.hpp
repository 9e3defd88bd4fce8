#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "wns/serialize.hpp"

namespace wns {

/// Process exit codes of the experiment runner.
enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidConfig = 1,
  kExitNotConverged = 2, // Picard non-convergence or a failed verification
  kExitNumerical = 3,    // blow-up, weight overflow, smallness refusal
  kExitIo = 4,
};

using KeyValues = std::map<std::string, std::string>;

/// Parses "key = value" lines; '#' starts a comment. Throws
/// Error(invalid_argument) on malformed lines.
KeyValues parse_key_values(std::istream& is);
KeyValues load_key_values(const std::filesystem::path& path);

/// Every setting of one experiment. Keys in a config file use the member
/// names below (e.g. "time_grid = geometric").
struct ExperimentConfig {
  std::string subcommand = "solve"; // solve | calibrate | radius | verify | depend

  std::string problem = "ns3d"; // ns3d | burgers1d
  int n = 16;
  double mu = 1.0;
  double T = 1.0;
  int samples = 128; // time intervals M
  std::string time_grid = "uniform"; // uniform | geometric
  double t_min = 1e-3;               // first positive time of a geometric grid
  double alpha = 0.5;
  std::vector<double> alphas; // radius sweep; empty means {alpha}
  double tol = 1e-10;
  int max_iters = 50;
  int substeps = 8;
  std::uint64_t seed = 1;
  std::string out = "out";

  // initial data
  std::string data = "random"; // zero | beltrami | single_mode | random | sine
  double amplitude = 1.0;
  double data_norm = 0.0; // > 0: rescale the data to this X^-1 norm
  double slope = 3.5;
  int band = 0;
  std::string method = "picard"; // picard | timestep (solve only)
  bool nonlinear = true;         // radius: false studies the heat flow alone
  bool write_trajectory = true;

  // calibration
  int trials = 100;
  int calib_n = 8;
  int calib_samples = 16;
  double calib_T = 1.0;
  double C = 0.0; // > 0 skips calibration in radius/depend

  // continuous dependence
  double depend_fraction = 0.1; // data size as a fraction of epsilon0
  double depend_delta = 1e-3;   // relative size of the perturbation

  /// Throws Error(invalid_argument) on unknown keys or unparsable values.
  static ExperimentConfig from_key_values(const KeyValues& kv);
  /// Canonical key-value form (sorted). The output directory is excluded:
  /// it does not change any artifact.
  KeyValues canonical() const;
  /// FNV-1a 64 of the canonical form, as 16 hex digits.
  std::string hash() const;
  void validate() const;
};

struct ExperimentResult {
  int exit_code = kExitOk;
  json summary;
  std::vector<std::filesystem::path> artifacts;
};

/// Runs one experiment and writes its artifacts under cfg.out. Errors are
/// reported as one-line JSON diagnostics on `diag` and mapped to exit codes.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream& diag);

ExperimentResult run_solve(const ExperimentConfig& cfg, std::ostream& diag);
ExperimentResult run_calibrate(const ExperimentConfig& cfg, std::ostream& diag);
ExperimentResult run_radius(const ExperimentConfig& cfg, std::ostream& diag);
ExperimentResult run_verify(const ExperimentConfig& cfg, std::ostream& diag);
ExperimentResult run_depend(const ExperimentConfig& cfg, std::ostream& diag);

/// Initial datum described by the config's data keys.
SpectralField make_initial_data(const ExperimentConfig& cfg);
SolverConfig make_solver_config(const ExperimentConfig& cfg);
TimeGrid make_time_grid(const ExperimentConfig& cfg);

}  // namespace wns
