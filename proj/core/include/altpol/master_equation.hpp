#pragma once

#include "altpol/lindblad.hpp"
#include "altpol/operator_core.hpp"
#include "altpol/units.hpp"

namespace altpol {

/// Initial / final Zeeman ground state of the Raman process (m_F = +1 or -1).
enum class Ground { plus, minus };

/// Polarisation of the cavity photon.
enum class Polarisation { sigma_plus, sigma_minus };

inline Ground other(Ground g) { return g == Ground::plus ? Ground::minus : Ground::plus; }
inline const char* to_string(Ground g) { return g == Ground::plus ? "plus" : "minus"; }
inline const char* to_string(Polarisation p) {
  return p == Polarisation::sigma_plus ? "sigma_plus" : "sigma_minus";
}

/// Generator of  d rho/dt = -i [H(t), rho] + L[rho]  with
///   H(t) = h_static + h_cavity + envelope(t) * h_pump.
/// All operators are in angular units (rad/us) with hbar = 1.
struct MasterEquation {
  HilbertSpace space;
  OperatorMatrix h_static;
  OperatorMatrix h_cavity;
  OperatorMatrix h_pump;
  Dissipator dissipator;
  Frequency kappa;

  OperatorMatrix hamiltonian(double envelope) const {
    return h_static + h_cavity + envelope * h_pump;
  }

  /// Dense reference evaluation of the right-hand side.
  DensityMatrix rhs(double envelope, const DensityMatrix& rho) const {
    const OperatorMatrix h = hamiltonian(envelope);
    return Complex(0.0, -1.0) * (h * rho - rho * h) + dissipator.apply(rho);
  }
};

}  // namespace altpol
