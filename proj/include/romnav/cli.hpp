#ifndef ROMNAV_CLI_HPP
#define ROMNAV_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "romnav/config.hpp"

namespace romnav {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalError = 3;

/// Build the POD basis and Galerkin model from a synthetic snapshot campaign;
/// writes basis.podb, model.rom, and config_effective.json into output_dir and
/// prints the eigenvalue spectrum with captured-energy and boundary-flux
/// diagnostics.
void cmd_train(const RunConfig& cfg, std::ostream& out);

/// Run one closed-loop episode from previously trained archives; writes
/// episode.csv, ekf_diag.csv, metrics.json, runtime.txt, and
/// config_effective.json into output_dir.
void cmd_run(const RunConfig& cfg, std::ostream& out);

/// Run one episode per horizon (optionally in parallel) into per-horizon
/// subdirectories, then write the summary sweep.csv with columns
/// Horizon,d_f,gamma_bar,u_rms,RT. Failed rows keep the horizon value and
/// leave the metric cells empty; the sweep continues.
void cmd_sweep(const RunConfig& cfg, const std::vector<double>& horizons, int jobs,
               std::ostream& out);

/// Map an exception to the process exit code (2 config/input, 3 numerical).
int exit_code_for(const std::exception& e);

} // namespace romnav

#endif
