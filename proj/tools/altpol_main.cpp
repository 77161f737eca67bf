#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "altpol/commands.hpp"
#include "altpol/version.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) out += (i ? " " : "") + std::string(argv[i]);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Master-equation simulator for alternating sigma+/sigma- single-photon emission"};
  app.set_version_flag("--version", altpol::kVersion);
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string preset_name = "ideal-paper";
  std::string out_dir;
  bool strict = false;
  double dt = 0.0;
  int threads = -1;
  bool quiet = false;

  app.add_option("--config", config_path, "Config file (sectioned key = value) applied on top of the preset")
      ->check(CLI::ExistingFile);
  app.add_option("--preset", preset_name, "Built-in parameter set")
      ->check(CLI::IsMember(altpol::preset_names()))
      ->capture_default_str();
  app.add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  app.add_flag("--strict", strict, "Fail with exit status 2 if any grid point fails");
  app.add_option("--dt", dt, "Integrator step in us (must not exceed dt_max_us)")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "Worker threads for scans (0: ALTPOL_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--quiet", quiet, "Do not echo the resolved configuration");

  for (auto c : {altpol::Command::evolve, altpol::Command::scan_cavity, altpol::Command::scan_pump,
                 altpol::Command::crossings}) {
    const char* help = "";
    switch (c) {
      case altpol::Command::evolve: help = "Single pump pulse: emission densities, inversion, losses"; break;
      case altpol::Command::scan_cavity: help = "Efficiencies versus cavity-atom detuning"; break;
      case altpol::Command::scan_pump: help = "Efficiencies versus cavity-pump detuning"; break;
      case altpol::Command::crossings: help = "Detunings with equal sigma+ and sigma- efficiency"; break;
    }
    app.add_subcommand(altpol::to_string(c), help)->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  const auto command = altpol::parse_command(app.get_subcommands().front()->get_name());
  altpol::ExperimentConfig config;
  try {
    config = altpol::preset(preset_name);
    if (!config_path.empty()) config = altpol::parse_config(read_file(config_path), config);
    if (dt > 0.0) config.dt_us = dt;
    if (threads >= 0) config.threads = threads;
    altpol::validate(config);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return altpol::kExitError;
  }
  if (!quiet) {
    std::istringstream resolved(altpol::serialize(config));
    for (std::string line; std::getline(resolved, line);) std::cerr << "# " << line << "\n";
  }

  altpol::RunOptions options;
  options.out_dir = out_dir;
  options.strict = strict;
  options.command_line = join_args(argc, argv);
  return altpol::run_command(config, *command, options, std::cout);
}
