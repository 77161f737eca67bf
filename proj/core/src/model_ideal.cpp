#include "altpol/model_ideal.hpp"

#include <cmath>
#include <stdexcept>

namespace altpol {

using namespace ideal_levels;

Frequency ZeemanConfig::shift() const {
  return Frequency::from_mhz(std::abs(lande_factor) * kBohrMagnetonMHzPerGauss * b_field_gauss);
}

HilbertSpace ideal_space(int photon_cutoff) {
  return HilbertSpace({kMinus, kExcited, kPlus}, photon_cutoff);
}

void validate(const IdealParams& p) {
  if (!(p.g.angular() > 0.0)) throw std::invalid_argument("ideal model: g must be > 0");
  if (!(p.kappa.angular() > 0.0)) throw std::invalid_argument("ideal model: kappa must be > 0");
  if (!(p.delta_b.angular() >= 0.0)) throw std::invalid_argument("ideal model: delta_B must be >= 0");
  if (!(p.omega_peak.angular() >= 0.0))
    throw std::invalid_argument("ideal model: pump Rabi frequency must be >= 0");
}

OperatorMatrix build_h_stat_ideal(const IdealParams& p, const HilbertSpace& space) {
  const Slot modes[] = {Slot::sigma_plus_mode, Slot::sigma_minus_mode};
  OperatorMatrix h = (p.delta_p + p.delta_b).angular() * transition(space, kMinus, kMinus) +
                     (p.delta_p - p.delta_b).angular() * transition(space, kPlus, kPlus);
  for (Slot m : modes) h += p.delta_cp.angular() * number_operator(space, m);
  return h;
}

OperatorMatrix build_h_int_ideal(const IdealParams& p, Frequency omega_now, const HilbertSpace& space) {
  const OperatorMatrix a = embed(space, Slot::sigma_plus_mode, annihilator(space.photon_cutoff()));
  const OperatorMatrix b = embed(space, Slot::sigma_minus_mode, annihilator(space.photon_cutoff()));
  const OperatorMatrix e_minus = transition(space, kExcited, kMinus);
  const OperatorMatrix e_plus = transition(space, kExcited, kPlus);

  // sigma+ photons are absorbed on |-> -> |e>, sigma- photons on |+> -> |e>.
  const OperatorMatrix cavity = e_minus * a + e_plus * b;
  const OperatorMatrix pump = e_minus + e_plus;
  return -(p.g.angular() * (cavity + cavity.adjoint()) +
           0.5 * omega_now.angular() * (pump + pump.adjoint()));
}

Dissipator build_cavity_dissipator(Frequency kappa, const HilbertSpace& space) {
  if (!(kappa.angular() >= 0.0)) throw std::invalid_argument("cavity decay rate must be >= 0");
  Dissipator d(space.total_dim());
  d.add_channel("cavity_sigma_plus", embed(space, Slot::sigma_plus_mode, annihilator(space.photon_cutoff())),
                kappa.angular());
  d.add_channel("cavity_sigma_minus",
                embed(space, Slot::sigma_minus_mode, annihilator(space.photon_cutoff())), kappa.angular());
  return d;
}

MasterEquation build_ideal_model(const IdealParams& p, int photon_cutoff) {
  validate(p);
  HilbertSpace space = ideal_space(photon_cutoff);
  OperatorMatrix h_stat = build_h_stat_ideal(p, space);
  OperatorMatrix h_cav = build_h_int_ideal(p, Frequency{}, space);
  OperatorMatrix h_pump = build_h_int_ideal(p, p.omega_peak, space) - h_cav;
  Dissipator diss = build_cavity_dissipator(p.kappa, space);
  return MasterEquation{std::move(space), std::move(h_stat), std::move(h_cav),
                        std::move(h_pump), std::move(diss), p.kappa};
}

const char* ground_label_ideal(Ground g) { return g == Ground::plus ? kPlus : kMinus; }

}  // namespace altpol
