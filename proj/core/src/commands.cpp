#include "altpol/commands.hpp"

#include <algorithm>
#include <vector>

#include "altpol/output.hpp"
#include "altpol/scan.hpp"

namespace altpol {

namespace {

/// Peaks lower than this are not listed in peaks.csv.
constexpr double kMinPeakHeight = 0.02;

struct Outputs {
  std::filesystem::path dir;
  std::vector<std::string> files;

  void write(const std::string& name, const CsvTable& table) {
    table.write(dir / name);
    files.push_back(name);
  }
};

int report_failures(std::size_t failures, std::size_t total, bool strict, std::ostream& log) {
  if (failures == 0) return kExitOk;
  log << "warning: " << failures << " of " << total << " grid points failed\n";
  return strict ? kExitStrictFailure : kExitOk;
}

int evolve(const ExperimentConfig& config, Outputs& out, std::ostream& log) {
  const SimulationSetup setup = to_setup(config);
  const EmissionRun run = run_emission(setup);
  out.write("trajectory.csv", trajectory_table(run));
  out.write("summary.csv", summary_table(run));
  log << "start " << run.initial << ", target " << run.target << ", delta_cp = " << setup.model.delta_cp().mhz()
      << " MHz\n"
      << "P(sigma+) = " << run.probability.sigma_plus << "\n"
      << "P(sigma-) = " << run.probability.sigma_minus << "\n"
      << "final inversion = " << run.record.inversion.back() << "\n"
      << "losses = " << run.losses.total_loss() << "\n";
  if (run.probability.truncated_tail)
    log << "warning: emission density " << run.probability.tail_density
        << " /us at the end of the window; the tail is truncated\n";
  return kExitOk;
}

int scan_cavity(const ExperimentConfig& config, bool strict, Outputs& out, std::ostream& log) {
  const SimulationSetup setup = to_setup(config);
  const CavityScanResult scan = scan_cavity_detuning(setup, config.cavity_grid.points(), config.threads);
  out.write("scan_cavity.csv", cavity_scan_table(scan));
  for (const auto& p : scan.points)
    if (p.failed()) log << "point delta_ca = " << p.delta_ca_mhz << " MHz failed: " << p.failure << "\n";
  log << "scanned " << scan.points.size() << " cavity detunings\n";
  return report_failures(scan.failures(), scan.points.size(), strict, log);
}

int scan_pump(const ExperimentConfig& config, bool strict, Outputs& out, std::ostream& log) {
  const SimulationSetup setup = to_setup(config);
  const PumpScanResult scan =
      scan_pump_detuning(setup, config.delta_ca_mhz, config.pump_grid.points(), config.threads);
  out.write("scan_pump.csv", pump_scan_table(scan));
  out.write("peaks.csv", peak_table(scan, kMinPeakHeight));
  for (const auto& p : scan.points)
    if (p.failed()) log << "point delta_cp = " << p.delta_cp_mhz << " MHz failed: " << p.failure << "\n";
  log << "scanned " << scan.points.size() << " pump detunings at delta_ca = " << config.delta_ca_mhz << " MHz\n";
  return report_failures(scan.failures(), scan.points.size(), strict, log);
}

int crossings(const ExperimentConfig& config, bool strict, Outputs& out, std::ostream& log) {
  const SimulationSetup setup = to_setup(config);
  const CavityScanResult scan = scan_cavity_detuning(setup, config.cavity_grid.points(), config.threads);
  CrossingOptions options;
  options.resolution_mhz = config.crossing_resolution_mhz;
  options.tolerance = config.crossing_tolerance;
  options.threads = config.threads;
  const std::vector<Crossing> found = find_equal_efficiency_detunings(setup, scan, options);
  out.write("scan_cavity.csv", cavity_scan_table(scan));
  out.write("crossings.csv", crossing_table(found));
  log << found.size() << " equal-efficiency crossing(s)\n";
  for (const auto& c : found)
    log << "  delta_ca = " << c.delta_ca_mhz << " MHz, P+ = " << c.point.lambda_sigma_plus
        << ", P- = " << c.point.lambda_sigma_minus << (c.converged ? "" : " (not converged)") << "\n";
  int status = report_failures(scan.failures(), scan.points.size(), strict, log);
  const bool unconverged = std::any_of(found.begin(), found.end(), [](auto& c) { return !c.converged; });
  if (unconverged) {
    log << "warning: some crossings did not reach the requested tolerance\n";
    if (strict) status = kExitStrictFailure;
  }
  return status;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::evolve: return "evolve";
    case Command::scan_cavity: return "scan-cavity";
    case Command::scan_pump: return "scan-pump";
    case Command::crossings: return "crossings";
  }
  return "";
}

std::optional<Command> parse_command(std::string_view name) {
  for (Command c : {Command::evolve, Command::scan_cavity, Command::scan_pump, Command::crossings})
    if (name == to_string(c)) return c;
  return std::nullopt;
}

int run_command(const ExperimentConfig& config, Command command, const RunOptions& options, std::ostream& log) {
  Outputs out;
  out.dir = options.out_dir.empty() ? std::filesystem::path(config.out_dir) : options.out_dir;
  int status = kExitError;
  try {
    validate(config);
    std::filesystem::create_directories(out.dir);
    switch (command) {
      case Command::evolve: status = evolve(config, out, log); break;
      case Command::scan_cavity: status = scan_cavity(config, options.strict, out, log); break;
      case Command::scan_pump: status = scan_pump(config, options.strict, out, log); break;
      case Command::crossings: status = crossings(config, options.strict, out, log); break;
    }
    ExperimentConfig resolved = config;
    resolved.out_dir = out.dir.string();
    write_manifest(out.dir / "manifest.txt",
                   {to_string(command), options.command_line, utc_timestamp(), resolved, out.files});
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return kExitError;
  }
  return status;
}

}  // namespace altpol
