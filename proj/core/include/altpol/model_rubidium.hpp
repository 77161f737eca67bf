#pragma once

#include <optional>
#include <string>
#include <vector>

#include "altpol/master_equation.hpp"

namespace altpol {

/// How spontaneous decay into |F=1, m_F=0> is treated.
enum class M0Mode {
  /// Decay into m_F=0 leaves the modeled system (trace loss), like decay to F=2.
  sink,
  /// m_F=0 is kept as a coherent, pump- and cavity-coupled level that decay can populate.
  coherent,
};

/// 87Rb D2 line restricted to 5S1/2 F=1 and 5P3/2 F'=0,1.
///
/// Level labels: g_m1, g_0, g_p1 (F=1, m=-1,0,+1), e0_0 (F'=0), e1_m1, e1_0,
/// e1_p1 (F'=1). The origin of energy is F'=0.
struct RubidiumParams {
  Frequency g0 = Frequency::from_mhz(6.7);
  Frequency omega0 = Frequency::from_mhz(14.7);
  Frequency kappa = Frequency::from_mhz(1.25);
  Frequency delta_b = Frequency::from_mhz(15.0);
  Frequency delta_p = Frequency::from_mhz(93.2);
  Frequency delta_cp = Frequency::from_mhz(-30.0);
  /// Polarisation decay rate gamma_j of every excited level (population decays at 2 gamma_j).
  Frequency gamma_total = Frequency::from_mhz(3.0);
  Frequency hyperfine_f0_f1 = Frequency::from_mhz(72.0);
  /// |g_F| of the F=1 ground state; converts delta_b into mu_B * B.
  double ground_lande = 0.5;
  double excited_lande_f0 = 0.0;
  double excited_lande_f1 = 2.0 / 3.0;
  M0Mode m0_mode = M0Mode::sink;
  Ground initial_state = Ground::plus;

  Frequency delta_ca() const { return delta_p + delta_cp; }
};

struct AtomicLevel {
  std::string label;
  int f = 1;
  int m = 0;
  bool excited = false;
};

struct LevelScheme {
  std::vector<AtomicLevel> levels;
  /// Rotating-frame energy of each level.
  std::vector<Frequency> energy;
  Frequency hyperfine_f0_f1;

  int index_of(int f, int m, bool excited) const;
  std::vector<std::string> labels() const;
};

/// One printed entry of the angular dipole table.
struct AngularFactor {
  int ground_m = 0;
  int excited_f = 0;
  int excited_m = 0;
  double value = 0.0;
  /// pi transitions (delta m = 0) are listed but not driven by pump or cavity.
  bool pi_transition = false;
};

struct Coupling {
  int ground = 0;   ///< level index in the scheme
  int excited = 0;  ///< level index in the scheme
  double angular = 0.0;
  Frequency g_plus;
  Frequency g_minus;
  Frequency omega;
};

struct CouplingTable {
  Frequency g0;
  Frequency omega0;
  std::vector<Coupling> entries;
};

/// A spontaneous decay channel from excited level `excited` to ground level
/// `ground`. ground is empty for the F=2 manifold, which is never modeled.
struct DecayChannel {
  std::optional<int> ground;
  int excited = 0;
  Frequency rate;
  bool modeled = true;
};

struct DecayConfig {
  Frequency gamma_total;
  std::vector<DecayChannel> channels;

  /// Rate that leaves the modeled system from excited level j:
  /// gamma_j minus the sum of modeled channel rates.
  Frequency sink_rate(int excited) const;
};

LevelScheme build_level_scheme(const RubidiumParams& p);

/// Printed angular factors A_ij: F'=0 column and F'=1 columns.
const std::vector<AngularFactor>& clebsch_table();

/// A(F=1,m -> F',m'); 0 where the table has no entry.
double angular_factor(int ground_m, int excited_f, int excited_m);

CouplingTable build_coupling_table(const LevelScheme& scheme, Frequency g0, Frequency omega0);

/// Branching into each ground sublevel proportional to |A_ij|^2, normalised to
/// the total D2 line strength; the F=2 remainder (and m=0 in sink mode) is
/// assigned to the sink.
DecayConfig build_decay_config(const LevelScheme& scheme, Frequency gamma_total, M0Mode mode);

/// Throws std::invalid_argument for negative rates or over-complete branching.
void validate(const DecayConfig& decay);

HilbertSpace rubidium_space(int photon_cutoff = 1);

OperatorMatrix build_h_stat_full(const LevelScheme& scheme, Frequency delta_cp, const HilbertSpace& space);

/// Interaction at pump envelope `omega_scale` (peak = 1).
OperatorMatrix build_h_int_full(const CouplingTable& table, double omega_scale, const HilbertSpace& space);

Dissipator build_full_dissipator(const DecayConfig& decay, Frequency kappa, const HilbertSpace& space);

void validate(const RubidiumParams& p);

MasterEquation build_rubidium_model(const RubidiumParams& p, int photon_cutoff = 1);

const char* ground_label_rubidium(Ground g);

}  // namespace altpol
