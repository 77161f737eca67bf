#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace altpol {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using DensityMatrix = Eigen::MatrixXcd;
using SparseOperator = Eigen::SparseMatrix<Complex>;

/// Tensor factor of the product space atom (x) sigma+ Fock (x) sigma- Fock.
enum class Slot { atom, sigma_plus_mode, sigma_minus_mode };

/// Product Hilbert space |level, n+, n-> with a common photon cutoff for both
/// cavity modes.
///
/// Basis ordering is atom-major, then sigma+ photon number, then sigma- photon
/// number:
///   index = (level * (cutoff+1) + n_plus) * (cutoff+1) + n_minus
/// Output files and golden data depend on this ordering.
class HilbertSpace {
 public:
  struct BasisState {
    int level;
    int n_plus;
    int n_minus;
  };

  HilbertSpace(std::vector<std::string> levels, int photon_cutoff = 1);

  const std::vector<std::string>& levels() const { return levels_; }
  int n_levels() const { return static_cast<int>(levels_.size()); }
  int photon_cutoff() const { return cutoff_; }
  int fock_dim() const { return cutoff_ + 1; }
  int total_dim() const { return n_levels() * fock_dim() * fock_dim(); }
  int slot_dim(Slot slot) const;

  bool has_level(std::string_view label) const;
  /// Throws std::invalid_argument for unknown labels.
  int level_index(std::string_view label) const;

  int index(int level, int n_plus, int n_minus) const;
  int index(std::string_view level, int n_plus, int n_minus) const {
    return index(level_index(level), n_plus, n_minus);
  }
  BasisState state(int index) const;

  bool operator==(const HilbertSpace&) const = default;

 private:
  std::vector<std::string> levels_;
  int cutoff_;
};

/// Single-mode lowering operator truncated at `cutoff` photons.
OperatorMatrix annihilator(int cutoff);

/// local_op on `slot`, identity on every other factor.
OperatorMatrix embed(const HilbertSpace& space, Slot slot, const OperatorMatrix& local_op);

/// |i><j| (x) 1_photons
OperatorMatrix transition(const HilbertSpace& space, std::string_view i, std::string_view j);
OperatorMatrix transition(const HilbertSpace& space, int i, int j);

OperatorMatrix number_operator(const HilbertSpace& space, Slot mode);

/// tr(rho * op)
Complex expectation(const DensityMatrix& rho, const OperatorMatrix& op);

DensityMatrix pure_state(const HilbertSpace& space, std::string_view level, int n_plus = 0,
                         int n_minus = 0);

/// Diagonal of a diagonal operator (e.g. photon numbers per basis state).
Eigen::VectorXd photon_numbers(const HilbertSpace& space, Slot mode);

/// max |A - A^dagger|
double hermiticity_error(const OperatorMatrix& a);

/// max_ij |a_ij|
double max_abs(const OperatorMatrix& a);

struct PhysicalityReport {
  double hermiticity_error = 0.0;
  double trace_real = 0.0;
  double trace_imag = 0.0;
  double min_eigenvalue = 0.0;
};

struct PhysicalityTolerance {
  double hermiticity = 1e-10;
  double trace_excess = 1e-9;
  double min_eigenvalue = -1e-9;
};

PhysicalityReport inspect_density(const DensityMatrix& rho);
bool is_physical(const PhysicalityReport& report, const PhysicalityTolerance& tol = {});

SparseOperator to_sparse(const OperatorMatrix& a, double drop_below = 0.0);

}  // namespace altpol
