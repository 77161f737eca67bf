#pragma once

#include "altpol/master_equation.hpp"

namespace altpol {

/// Three-level Lambda atom: F=1, m=-1 ("minus") and m=+1 ("plus") ground
/// states and a single F'=0 excited state ("e") at the origin of the energy
/// scale. The decoupled m=0 ground state is not part of the space.
namespace ideal_levels {
inline constexpr const char* kMinus = "minus";
inline constexpr const char* kExcited = "e";
inline constexpr const char* kPlus = "plus";
}  // namespace ideal_levels

struct IdealParams {
  Frequency g = Frequency::from_mhz(2.7);
  Frequency kappa = Frequency::from_mhz(1.25);
  Frequency delta_b = Frequency::from_mhz(15.0);
  /// Pump detuning omega_p - omega_0e.
  Frequency delta_p = Frequency::from_mhz(30.0);
  /// Cavity - pump detuning omega_c - omega_p.
  Frequency delta_cp = Frequency::from_mhz(-30.0);
  /// Peak Rabi frequency of each circular component of the pump.
  Frequency omega_peak = Frequency::from_mhz(6.0);
  Ground initial_state = Ground::plus;

  /// Cavity - atom detuning, always derived: delta_p + delta_cp.
  Frequency delta_ca() const { return delta_p + delta_cp; }
};

/// Ground-state Zeeman shift |g_L| mu_B B / h.
struct ZeemanConfig {
  double lande_factor = 0.5;
  double b_field_gauss = 21.4;
  Frequency shift() const;
};

HilbertSpace ideal_space(int photon_cutoff = 1);

/// Throws std::invalid_argument unless g > 0, kappa > 0, delta_b >= 0, omega_peak >= 0.
void validate(const IdealParams& p);

OperatorMatrix build_h_stat_ideal(const IdealParams& p, const HilbertSpace& space);

/// Atom-cavity and atom-pump coupling at instantaneous Rabi frequency omega_now.
OperatorMatrix build_h_int_ideal(const IdealParams& p, Frequency omega_now, const HilbertSpace& space);

/// Cavity decay of both polarisation modes at field decay rate kappa.
Dissipator build_cavity_dissipator(Frequency kappa, const HilbertSpace& space);

MasterEquation build_ideal_model(const IdealParams& p, int photon_cutoff = 1);

const char* ground_label_ideal(Ground g);

}  // namespace altpol
