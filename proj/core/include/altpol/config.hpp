#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "altpol/experiment.hpp"

namespace altpol {

/// Rejected configuration. `key` names the offending setting and `line` is
/// its 1-based line in the parsed text (0 when not tied to a line).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& message);

  const std::string& key() const { return key_; }
  int line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string key_;
  int line_;
  std::string detail_;
};

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  double step = 1.0;

  std::vector<double> points() const;
  bool operator==(const GridSpec&) const = default;
};

/// Everything a CLI run needs. Frequencies are nu = omega / 2pi in MHz, times in us.
///
/// For model = rubidium, g_mhz and omega_mhz are the electronic g0 and Omega0
/// that the angular factors scale; for model = ideal they are used directly and
/// the decay and hyperfine settings are ignored.
struct ExperimentConfig {
  ModelKind model = ModelKind::ideal;
  int photon_cutoff = 1;
  Ground initial_state = Ground::plus;
  M0Mode m0_mode = M0Mode::sink;

  double g_mhz = 2.7;
  double kappa_mhz = 1.25;
  double delta_b_mhz = 15.0;
  double omega_mhz = 6.0;
  double gamma_mhz = 3.0;
  double hyperfine_mhz = 72.0;
  double ground_lande = 0.5;
  double excited_lande_f0 = 0.0;
  double excited_lande_f1 = 2.0 / 3.0;
  /// When set, delta_B = ground_lande * mu_B * B replaces delta_b_mhz.
  std::optional<double> b_field_gauss;

  double delta_ca_mhz = 0.0;
  /// Empty selects the Raman resonance for the initial state.
  std::optional<double> delta_cp_mhz;

  PulseKind pulse_shape = PulseKind::sin_squared;
  double pulse_duration_us = 1.5;

  double dt_us = 1e-3;
  double dt_max_us = 1e-3;
  /// <= 0 selects 5 / (2 kappa).
  double tail_us = 0.0;
  int store_every = 10;

  GridSpec cavity_grid{-40.0, 40.0, 1.0};
  GridSpec pump_grid{-50.0, 50.0, 0.5};
  double crossing_resolution_mhz = 0.1;
  double crossing_tolerance = 1e-3;
  /// 0 defers to ALTPOL_THREADS / hardware concurrency.
  int threads = 0;

  std::string out_dir = "out";

  /// delta_B after applying b_field_gauss.
  double effective_delta_b_mhz() const;

  bool operator==(const ExperimentConfig&) const = default;
};

std::vector<std::string> preset_names();

/// Throws ConfigError for unknown names.
ExperimentConfig preset(std::string_view name);

/// Parses sectioned key = value text on top of `base`. '#' and ';' start
/// comments. Section headers are optional, but a key under the wrong section
/// is an error, as are unknown or repeated keys and malformed values.
ExperimentConfig parse_config(std::string_view text, const ExperimentConfig& base = {});

/// Throws ConfigError naming the first key that violates an invariant.
void validate(const ExperimentConfig& config);

/// Complete, re-parseable text form; doubles use the shortest exact representation.
std::string serialize(const ExperimentConfig& config);

SimulationSetup to_setup(const ExperimentConfig& config);

}  // namespace altpol
