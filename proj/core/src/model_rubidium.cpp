#include "altpol/model_rubidium.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "altpol/model_ideal.hpp"

namespace altpol {

namespace {

// Sum over all ground states (F=1 and F=2) of |A|^2 for any excited sublevel
// of the D2 line: (2J+1)/(2J'+1) = 2/4.
constexpr double kTotalLineStrength = 0.5;

const char* level_label(int f, int m, bool excited) {
  if (!excited) {
    switch (m) {
      case -1: return "g_m1";
      case 0: return "g_0";
      case 1: return "g_p1";
    }
  } else if (f == 0) {
    return "e0_0";
  } else {
    switch (m) {
      case -1: return "e1_m1";
      case 0: return "e1_0";
      case 1: return "e1_p1";
    }
  }
  throw std::invalid_argument("no such level in the rubidium scheme");
}

}  // namespace

int LevelScheme::index_of(int f, int m, bool excited) const {
  for (std::size_t i = 0; i < levels.size(); ++i)
    if (levels[i].f == f && levels[i].m == m && levels[i].excited == excited) return static_cast<int>(i);
  throw std::invalid_argument("LevelScheme: level not present");
}

std::vector<std::string> LevelScheme::labels() const {
  std::vector<std::string> out;
  for (const auto& l : levels) out.push_back(l.label);
  return out;
}

Frequency DecayConfig::sink_rate(int excited) const {
  Frequency modeled;
  for (const auto& c : channels)
    if (c.excited == excited && c.modeled) modeled = modeled + c.rate;
  return gamma_total - modeled;
}

LevelScheme build_level_scheme(const RubidiumParams& p) {
  LevelScheme s;
  s.hyperfine_f0_f1 = p.hyperfine_f0_f1;
  // mu_B * B expressed through the ground-state shift |g_F| mu_B B = delta_B.
  const Frequency mu_b_field = p.ground_lande != 0.0 ? p.delta_b * (1.0 / p.ground_lande) : Frequency{};

  for (int m : {-1, 0, 1}) {
    s.levels.push_back({level_label(1, m, false), 1, m, false});
    // g_F = -1/2 for F=1: m = +1 shifts down by delta_B, m = -1 up.
    s.energy.push_back(p.delta_p - p.delta_b * static_cast<double>(m));
  }
  const std::pair<int, int> excited[] = {{0, 0}, {1, -1}, {1, 0}, {1, 1}};
  for (auto [f, m] : excited) {
    s.levels.push_back({level_label(f, m, true), f, m, true});
    const double lande = f == 0 ? p.excited_lande_f0 : p.excited_lande_f1;
    const Frequency offset = f == 0 ? Frequency{} : p.hyperfine_f0_f1;
    s.energy.push_back(offset + mu_b_field * (lande * m));
  }
  return s;
}

const std::vector<AngularFactor>& clebsch_table() {
  static const std::vector<AngularFactor> table = [] {
    const double a0 = std::sqrt(1.0 / 6.0);
    const double a1 = std::sqrt(5.0 / 24.0);
    return std::vector<AngularFactor>{
        // F=1, m=+1
        {+1, 0, 0, a0, false},
        {+1, 1, +1, a1, true},
        {+1, 1, 0, -a1, false},
        // F=1, m=0
        {0, 0, 0, a0, true},
        {0, 1, +1, a1, false},
        {0, 1, -1, -a1, false},
        // F=1, m=-1
        {-1, 0, 0, a0, false},
        {-1, 1, 0, a1, false},
        {-1, 1, -1, -a1, true},
    };
  }();
  return table;
}

double angular_factor(int ground_m, int excited_f, int excited_m) {
  for (const auto& a : clebsch_table())
    if (a.ground_m == ground_m && a.excited_f == excited_f && a.excited_m == excited_m) return a.value;
  return 0.0;
}

CouplingTable build_coupling_table(const LevelScheme& scheme, Frequency g0, Frequency omega0) {
  CouplingTable t{g0, omega0, {}};
  for (const auto& a : clebsch_table()) {
    Coupling c;
    c.ground = scheme.index_of(1, a.ground_m, false);
    c.excited = scheme.index_of(a.excited_f, a.excited_m, true);
    c.angular = a.value;
    const int dm = a.excited_m - a.ground_m;
    if (dm == +1) c.g_plus = g0 * a.value;
    if (dm == -1) c.g_minus = g0 * a.value;
    if (std::abs(dm) == 1) c.omega = omega0 * a.value;
    t.entries.push_back(c);
  }
  return t;
}

DecayConfig build_decay_config(const LevelScheme& scheme, Frequency gamma_total, M0Mode mode) {
  DecayConfig d{gamma_total, {}};
  for (std::size_t j = 0; j < scheme.levels.size(); ++j) {
    const auto& ex = scheme.levels[j];
    if (!ex.excited) continue;
    double f1_strength = 0.0;
    for (const auto& a : clebsch_table()) {
      if (a.excited_f != ex.f || a.excited_m != ex.m) continue;
      const double weight = a.value * a.value / kTotalLineStrength;
      f1_strength += a.value * a.value;
      const bool modeled = !(mode == M0Mode::sink && a.ground_m == 0);
      d.channels.push_back({scheme.index_of(1, a.ground_m, false), static_cast<int>(j),
                            gamma_total * weight, modeled});
    }
    const double f2_weight = 1.0 - f1_strength / kTotalLineStrength;
    d.channels.push_back({std::nullopt, static_cast<int>(j),
                          gamma_total * std::max(0.0, f2_weight), false});
  }
  return d;
}

void validate(const DecayConfig& decay) {
  if (!(decay.gamma_total.angular() >= 0.0)) throw std::invalid_argument("decay: gamma must be >= 0");
  for (const auto& c : decay.channels)
    if (!(c.rate.angular() >= 0.0)) throw std::invalid_argument("decay: negative channel rate");
  std::vector<int> excited;
  for (const auto& c : decay.channels) excited.push_back(c.excited);
  for (int j : excited)
    if (decay.sink_rate(j).angular() < -1e-12 * std::max(1.0, decay.gamma_total.angular()))
      throw std::invalid_argument("decay: modeled branching exceeds total decay rate");
}

HilbertSpace rubidium_space(int photon_cutoff) {
  std::vector<std::string> labels;
  for (int m : {-1, 0, 1}) labels.emplace_back(level_label(1, m, false));
  labels.emplace_back(level_label(0, 0, true));
  for (int m : {-1, 0, 1}) labels.emplace_back(level_label(1, m, true));
  return HilbertSpace(std::move(labels), photon_cutoff);
}

OperatorMatrix build_h_stat_full(const LevelScheme& scheme, Frequency delta_cp, const HilbertSpace& space) {
  if (space.levels() != scheme.labels())
    throw std::invalid_argument("build_h_stat_full: level scheme does not match Hilbert space");
  OperatorMatrix h = OperatorMatrix::Zero(space.total_dim(), space.total_dim());
  for (int k = 0; k < space.total_dim(); ++k) {
    const auto s = space.state(k);
    h(k, k) = scheme.energy[static_cast<std::size_t>(s.level)].angular() +
              delta_cp.angular() * (s.n_plus + s.n_minus);
  }
  return h;
}

OperatorMatrix build_h_int_full(const CouplingTable& table, double omega_scale, const HilbertSpace& space) {
  const OperatorMatrix a = embed(space, Slot::sigma_plus_mode, annihilator(space.photon_cutoff()));
  const OperatorMatrix b = embed(space, Slot::sigma_minus_mode, annihilator(space.photon_cutoff()));
  OperatorMatrix h = OperatorMatrix::Zero(space.total_dim(), space.total_dim());
  for (const auto& c : table.entries) {
    const OperatorMatrix down = transition(space, c.ground, c.excited);  // |i><j|
    if (c.g_plus.angular() != 0.0) {
      const OperatorMatrix t = down * a.adjoint();
      h -= c.g_plus.angular() * (t + t.adjoint());
    }
    if (c.g_minus.angular() != 0.0) {
      const OperatorMatrix t = down * b.adjoint();
      h -= c.g_minus.angular() * (t + t.adjoint());
    }
    if (c.omega.angular() != 0.0 && omega_scale != 0.0)
      h -= 0.5 * c.omega.angular() * omega_scale * (down + down.adjoint());
  }
  return h;
}

Dissipator build_full_dissipator(const DecayConfig& decay, Frequency kappa, const HilbertSpace& space) {
  validate(decay);
  Dissipator d = build_cavity_dissipator(kappa, space);
  for (const auto& c : decay.channels) {
    if (!c.modeled || !c.ground || c.rate.angular() == 0.0) continue;
    d.add_channel(space.levels()[static_cast<std::size_t>(*c.ground)] + "<-" +
                      space.levels()[static_cast<std::size_t>(c.excited)],
                  transition(space, *c.ground, c.excited), c.rate.angular());
  }
  std::vector<int> done;
  for (const auto& c : decay.channels) {
    if (std::find(done.begin(), done.end(), c.excited) != done.end()) continue;
    done.push_back(c.excited);
    const double rate = std::max(0.0, decay.sink_rate(c.excited).angular());
    if (rate == 0.0) continue;
    d.add_sink("sink<-" + space.levels()[static_cast<std::size_t>(c.excited)],
               transition(space, c.excited, c.excited), rate);
  }
  return d;
}

void validate(const RubidiumParams& p) {
  if (!(p.g0.angular() > 0.0)) throw std::invalid_argument("rubidium model: g0 must be > 0");
  if (!(p.kappa.angular() > 0.0)) throw std::invalid_argument("rubidium model: kappa must be > 0");
  if (!(p.delta_b.angular() >= 0.0)) throw std::invalid_argument("rubidium model: delta_B must be >= 0");
  if (!(p.omega0.angular() >= 0.0)) throw std::invalid_argument("rubidium model: omega0 must be >= 0");
  if (!(p.gamma_total.angular() >= 0.0)) throw std::invalid_argument("rubidium model: gamma must be >= 0");
  if (!(p.ground_lande > 0.0)) throw std::invalid_argument("rubidium model: ground Lande factor must be > 0");
}

MasterEquation build_rubidium_model(const RubidiumParams& p, int photon_cutoff) {
  validate(p);
  HilbertSpace space = rubidium_space(photon_cutoff);
  const LevelScheme scheme = build_level_scheme(p);
  const CouplingTable table = build_coupling_table(scheme, p.g0, p.omega0);
  OperatorMatrix h_stat = build_h_stat_full(scheme, p.delta_cp, space);
  OperatorMatrix h_cav = build_h_int_full(table, 0.0, space);
  OperatorMatrix h_pump = build_h_int_full(table, 1.0, space) - h_cav;
  Dissipator diss = build_full_dissipator(build_decay_config(scheme, p.gamma_total, p.m0_mode), p.kappa, space);
  return MasterEquation{std::move(space), std::move(h_stat), std::move(h_cav),
                        std::move(h_pump), std::move(diss), p.kappa};
}

const char* ground_label_rubidium(Ground g) { return g == Ground::plus ? "g_p1" : "g_m1"; }

}  // namespace altpol
