#include "altpol/experiment.hpp"

#include <stdexcept>

namespace altpol {

const char* to_string(ModelKind kind) { return kind == ModelKind::ideal ? "ideal" : "rubidium"; }

Ground ModelSpec::initial_state() const {
  return kind == ModelKind::ideal ? ideal.initial_state : rubidium.initial_state;
}

Frequency ModelSpec::kappa() const { return kind == ModelKind::ideal ? ideal.kappa : rubidium.kappa; }

Frequency ModelSpec::delta_b() const { return kind == ModelKind::ideal ? ideal.delta_b : rubidium.delta_b; }

Frequency ModelSpec::delta_ca() const {
  return kind == ModelKind::ideal ? ideal.delta_ca() : rubidium.delta_ca();
}

Frequency ModelSpec::delta_cp() const {
  return kind == ModelKind::ideal ? ideal.delta_cp : rubidium.delta_cp;
}

ModelSpec ModelSpec::with_detunings(Frequency delta_ca, Frequency delta_cp) const {
  ModelSpec out = *this;
  const Frequency delta_p = delta_ca - delta_cp;
  out.ideal.delta_p = delta_p;
  out.ideal.delta_cp = delta_cp;
  out.rubidium.delta_p = delta_p;
  out.rubidium.delta_cp = delta_cp;
  return out;
}

ModelSpec ModelSpec::with_initial_state(Ground g) const {
  ModelSpec out = *this;
  out.ideal.initial_state = g;
  out.rubidium.initial_state = g;
  return out;
}

double SimulationSetup::window() const {
  return pulse.duration + (numerics.tail > 0.0 ? numerics.tail : default_tail(model.kappa()));
}

IntegratorOptions SimulationSetup::integrator_options() const {
  IntegratorOptions o;
  o.dt = numerics.dt;
  o.dt_max = numerics.dt_max;
  o.window = window();
  o.store_every = numerics.store_every;
  return o;
}

MasterEquation build_model(const ModelSpec& spec) {
  if (spec.kind == ModelKind::ideal) return build_ideal_model(spec.ideal, spec.photon_cutoff);
  return build_rubidium_model(spec.rubidium, spec.photon_cutoff);
}

std::string ground_label(ModelKind kind, Ground g) {
  return kind == ModelKind::ideal ? ground_label_ideal(g) : ground_label_rubidium(g);
}

Polarisation lambda_polarisation(Ground initial) {
  // m=+1 -> m=-1 emits a photon that lowers m by one on the excited -> final leg: sigma+.
  return initial == Ground::plus ? Polarisation::sigma_plus : Polarisation::sigma_minus;
}

Frequency raman_delta_cp(const ModelSpec& spec, Ground initial) {
  // Ground-state differences do not depend on the pump detuning; evaluate at
  // zero detunings so that the two directions come out as exact negatives.
  const ModelSpec probe = spec.with_detunings(Frequency{}, Frequency{});
  const MasterEquation eq = build_model(probe);
  const auto energy = [&](Ground g) {
    const int k = eq.space.index(ground_label(spec.kind, g), 0, 0);
    return eq.h_static(k, k).real();
  };
  return Frequency::from_angular(energy(initial) - energy(other(initial)));
}

EmissionRun run_emission(const SimulationSetup& setup) {
  const MasterEquation eq = build_model(setup.model);
  EmissionRun run;
  run.initial = ground_label(setup.model.kind, setup.model.initial_state());
  run.target = ground_label(setup.model.kind, other(setup.model.initial_state()));
  const DensityMatrix rho0 = pure_state(eq.space, run.initial);
  run.trajectory = integrate_master(eq, rho0, setup.pulse, setup.integrator_options());
  run.record = make_emission_record(run.trajectory, eq.kappa, run.initial, run.target);
  run.probability = emission_probability(run.record);
  run.losses = loss_budget(run.trajectory, run.initial, run.target);
  return run;
}

}  // namespace altpol
