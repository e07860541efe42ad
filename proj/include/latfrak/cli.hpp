#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latfrak/lattice.hpp"
#include "latfrak/phase.hpp"

namespace latfrak::cli {

struct RunConfig {
  std::string subcommand;
  LatticeParams params;

  // Wavenumber grid (dispersion, kernel, factorize).
  double xi_min = 0.0;
  double xi_max = 0.0;  // 0 selects a per-subcommand default
  int n_points = 0;
  std::vector<double> xi_list;
  double xi_imag = 0.0;

  // Profile options (argprofile, factorize).
  Regularization regularization = Regularization::constant;
  double profile_xi_max = 0.0;
  int points_per_period = 10000;

  // Sweep options (err, sif).
  std::vector<double> alphas;
  int n_speeds = 0;  // 0 runs the single speed params.V
  double v_min = 0.05;
  double v_max = 0.99;

  std::string out;        // empty writes to stdout
  std::string summary;    // JSON summary path (argprofile, err, sif)
  std::string crossings;  // crossing table path (dispersion)
  std::string format = "csv";
  std::uint64_t seed = 12345;
  int samples = 200;  // random samples per property in `check`
};

nlohmann::json to_json(const RunConfig& c);

// Parses argv. Flags override values read from --config FILE (key=value lines).
// Throws UsageError.
RunConfig parse_args(int argc, const char* const* argv);

// Executes a parsed configuration. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run with exit codes 0 ok, 1 numeric failure, 2 usage.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace latfrak::cli
