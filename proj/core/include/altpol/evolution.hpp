#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "altpol/master_equation.hpp"
#include "altpol/pulse.hpp"

namespace altpol {

/// Raised when the stepped state stops being a physical density matrix,
/// which in practice means the step size is too large.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IntegratorOptions {
  double dt = 1e-3;
  double dt_max = 1e-3;
  /// Total integration time in us. Zero selects pulse duration + default_tail(kappa).
  double window = 0.0;
  /// Keep the full density matrix every `store_every` steps (and at the end).
  int store_every = 10;
  bool check_physicality = true;
  PhysicalityTolerance tolerance{1e-9, 1e-9, -1e-7};
};

/// Time for the intracavity field to leak out after the pulse: 5 / (2 kappa).
double default_tail(Frequency kappa);
double default_window(const PulseShape& pulse, Frequency kappa);

struct Snapshot {
  std::size_t step = 0;
  DensityMatrix rho;
};

/// Uniform time grid with per-step expectation values. Full density matrices
/// are retained only at decimated steps.
struct Trajectory {
  std::vector<std::string> levels;
  double dt = 0.0;
  std::vector<double> time;
  std::vector<double> envelope;
  std::vector<double> n_plus;
  std::vector<double> n_minus;
  std::vector<double> trace;
  /// steps x levels, atomic populations traced over the photon modes.
  Eigen::MatrixXd populations;
  /// Cumulative photon leakage 2 kappa <n> and trace loss into sinks,
  /// integrated with the same fourth-order stages as the state.
  std::vector<double> leaked_plus;
  std::vector<double> leaked_minus;
  std::vector<double> sink_loss;
  std::vector<Snapshot> snapshots;
  DensityMatrix final_state;

  std::size_t steps() const { return time.size(); }
  int level_index(std::string_view label) const;
  double population(std::size_t step, std::string_view level) const;
};

/// Classical fixed-step fourth-order Runge-Kutta integration of the master
/// equation under the given pump envelope. Deterministic for fixed inputs.
///
/// Throws std::invalid_argument for dt <= 0 or dt > dt_max, and
/// IntegrationError if a stored state violates the physicality tolerances.
Trajectory integrate_master(const MasterEquation& eq, const DensityMatrix& rho0, const PulseShape& pulse,
                            const IntegratorOptions& options = {});

enum class OracleScheme {
  /// Envelope sampled at the slice midpoint: second order in the slice width.
  midpoint,
  /// Two-point Gauss-Legendre Magnus expansion with the commutator term: fourth order.
  magnus4,
};

struct OracleOptions {
  int n_slices = 1500;
  OracleScheme scheme = OracleScheme::magnus4;
  /// Largest admissible superoperator dimension (dim^2).
  std::size_t max_superoperator_dim = 4096;
};

/// Independent reference propagator: vectorises rho, builds the dim^2 x dim^2
/// Liouvillian explicitly and applies the exponential of every time slice.
/// Slices are uniform over [0, duration].
DensityMatrix propagator_oracle(const MasterEquation& eq, const DensityMatrix& rho0, const PulseShape& pulse,
                                double duration, const OracleOptions& options = {});

using SparseSuperoperator = Eigen::SparseMatrix<Complex>;

/// Column-stacking convention: vec(A X B) = (B^T (x) A) vec(X).
struct Liouvillian {
  SparseSuperoperator stationary;  ///< everything except the pump
  SparseSuperoperator pump;        ///< pump commutator at envelope 1
};

Liouvillian build_liouvillian(const MasterEquation& eq);

/// exp(a) v via a scaled Taylor series truncated at double precision.
/// `norm1_bound` must bound the induced 1-norm of a.
Eigen::VectorXcd expm_action(const SparseSuperoperator& a, const Eigen::VectorXcd& v, double norm1_bound);

double norm1(const SparseSuperoperator& a);

}  // namespace altpol
