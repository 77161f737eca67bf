#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "altpol/config.hpp"

namespace altpol {

enum class Command { evolve, scan_cavity, scan_pump, crossings };

const char* to_string(Command c);
/// "evolve", "scan-cavity", "scan-pump" or "crossings"; empty otherwise.
std::optional<Command> parse_command(std::string_view name);

struct RunOptions {
  /// Overrides config.out_dir when non-empty.
  std::filesystem::path out_dir;
  /// Any failed grid point or unconverged crossing makes the run fail.
  bool strict = false;
  /// Recorded in the manifest.
  std::string command_line;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitStrictFailure = 2;

/// Runs one subcommand, writes its CSV files and manifest.txt into the output
/// directory and reports progress on `log`. Returns a process exit status.
int run_command(const ExperimentConfig& config, Command command, const RunOptions& options, std::ostream& log);

}  // namespace altpol
