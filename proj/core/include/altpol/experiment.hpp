#pragma once

#include <string>

#include "altpol/evolution.hpp"
#include "altpol/model_ideal.hpp"
#include "altpol/model_rubidium.hpp"
#include "altpol/observables.hpp"

namespace altpol {

enum class ModelKind { ideal, rubidium };

const char* to_string(ModelKind kind);

/// Physical model selection. Only the parameter block matching `kind` is used.
struct ModelSpec {
  ModelKind kind = ModelKind::ideal;
  IdealParams ideal;
  RubidiumParams rubidium;
  int photon_cutoff = 1;

  Ground initial_state() const;
  Frequency kappa() const;
  Frequency delta_b() const;
  Frequency delta_ca() const;
  Frequency delta_cp() const;

  /// Copy with the given cavity-atom and cavity-pump detunings; the pump
  /// detuning is derived as delta_ca - delta_cp.
  ModelSpec with_detunings(Frequency delta_ca, Frequency delta_cp) const;
  ModelSpec with_initial_state(Ground g) const;
};

struct NumericsConfig {
  double dt = 1e-3;
  double dt_max = 1e-3;
  /// Integration time after the pulse; <= 0 selects 5 / (2 kappa).
  double tail = 0.0;
  int store_every = 10;
};

struct SimulationSetup {
  ModelSpec model;
  PulseShape pulse;
  NumericsConfig numerics;

  IntegratorOptions integrator_options() const;
  double window() const;
};

MasterEquation build_model(const ModelSpec& spec);

/// Label of the ground state with m_F = +1 or -1 in the model's Hilbert space.
std::string ground_label(ModelKind kind, Ground g);

/// The cavity mode that carries the Lambda photon when starting in `initial`.
Polarisation lambda_polarisation(Ground initial);

/// Cavity-pump detuning that puts the Raman transition initial -> other(initial)
/// on resonance, from energy conservation on the rotating-frame levels:
///   E(initial) + pump photon = E(final) + cavity photon  =>  delta_cp = E(initial) - E(final).
Frequency raman_delta_cp(const ModelSpec& spec, Ground initial);

struct EmissionRun {
  std::string initial;
  std::string target;
  Trajectory trajectory;
  EmissionRecord record;
  EmissionProbability probability;
  LossBudget losses;

  double efficiency(Polarisation p) const {
    return p == Polarisation::sigma_plus ? probability.sigma_plus : probability.sigma_minus;
  }
};

/// Integrates one pump pulse from the model's initial ground state with an
/// empty cavity; the target is the opposite Zeeman ground state.
EmissionRun run_emission(const SimulationSetup& setup);

}  // namespace altpol
