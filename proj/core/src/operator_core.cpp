#include "altpol/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include <Eigen/Eigenvalues>

namespace altpol {

namespace {

OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
  OperatorMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

HilbertSpace::HilbertSpace(std::vector<std::string> levels, int photon_cutoff)
    : levels_(std::move(levels)), cutoff_(photon_cutoff) {
  if (levels_.empty()) throw std::invalid_argument("HilbertSpace: no atomic levels");
  if (cutoff_ < 1) throw std::invalid_argument("HilbertSpace: photon cutoff must be >= 1");
  std::unordered_set<std::string> seen;
  for (const auto& l : levels_)
    if (!seen.insert(l).second) throw std::invalid_argument("HilbertSpace: duplicate level '" + l + "'");
}

int HilbertSpace::slot_dim(Slot slot) const {
  return slot == Slot::atom ? n_levels() : fock_dim();
}

bool HilbertSpace::has_level(std::string_view label) const {
  return std::find(levels_.begin(), levels_.end(), label) != levels_.end();
}

int HilbertSpace::level_index(std::string_view label) const {
  auto it = std::find(levels_.begin(), levels_.end(), label);
  if (it == levels_.end())
    throw std::invalid_argument("unknown atomic level '" + std::string(label) + "'");
  return static_cast<int>(it - levels_.begin());
}

int HilbertSpace::index(int level, int n_plus, int n_minus) const {
  if (level < 0 || level >= n_levels() || n_plus < 0 || n_plus > cutoff_ || n_minus < 0 ||
      n_minus > cutoff_)
    throw std::out_of_range("HilbertSpace::index: basis state out of range");
  return (level * fock_dim() + n_plus) * fock_dim() + n_minus;
}

HilbertSpace::BasisState HilbertSpace::state(int index) const {
  const int f = fock_dim();
  return {index / (f * f), (index / f) % f, index % f};
}

OperatorMatrix annihilator(int cutoff) {
  if (cutoff < 1) throw std::invalid_argument("annihilator: cutoff must be >= 1");
  OperatorMatrix a = OperatorMatrix::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

OperatorMatrix embed(const HilbertSpace& space, Slot slot, const OperatorMatrix& local_op) {
  const int d = space.slot_dim(slot);
  if (local_op.rows() != d || local_op.cols() != d)
    throw std::invalid_argument("embed: local operator has dimension " +
                                std::to_string(local_op.rows()) + ", slot expects " +
                                std::to_string(d));
  const OperatorMatrix atom_id = OperatorMatrix::Identity(space.n_levels(), space.n_levels());
  const OperatorMatrix fock_id = OperatorMatrix::Identity(space.fock_dim(), space.fock_dim());
  switch (slot) {
    case Slot::atom: return kron(kron(local_op, fock_id), fock_id);
    case Slot::sigma_plus_mode: return kron(kron(atom_id, local_op), fock_id);
    case Slot::sigma_minus_mode: return kron(kron(atom_id, fock_id), local_op);
  }
  throw std::logic_error("embed: bad slot");
}

OperatorMatrix transition(const HilbertSpace& space, int i, int j) {
  OperatorMatrix local = OperatorMatrix::Zero(space.n_levels(), space.n_levels());
  local(i, j) = 1.0;
  return embed(space, Slot::atom, local);
}

OperatorMatrix transition(const HilbertSpace& space, std::string_view i, std::string_view j) {
  return transition(space, space.level_index(i), space.level_index(j));
}

OperatorMatrix number_operator(const HilbertSpace& space, Slot mode) {
  if (mode == Slot::atom) throw std::invalid_argument("number_operator: not a cavity mode");
  const OperatorMatrix a = annihilator(space.photon_cutoff());
  return embed(space, mode, a.adjoint() * a);
}

Complex expectation(const DensityMatrix& rho, const OperatorMatrix& op) {
  if (rho.rows() != op.rows() || rho.cols() != op.cols() || rho.rows() != rho.cols())
    throw std::invalid_argument("expectation: dimension mismatch");
  // tr(rho op) = sum_ij rho_ij op_ji
  return (rho.array() * op.transpose().array()).sum();
}

DensityMatrix pure_state(const HilbertSpace& space, std::string_view level, int n_plus, int n_minus) {
  const int k = space.index(level, n_plus, n_minus);
  DensityMatrix rho = DensityMatrix::Zero(space.total_dim(), space.total_dim());
  rho(k, k) = 1.0;
  return rho;
}

Eigen::VectorXd photon_numbers(const HilbertSpace& space, Slot mode) {
  Eigen::VectorXd n(space.total_dim());
  for (int k = 0; k < space.total_dim(); ++k) {
    const auto s = space.state(k);
    n[k] = mode == Slot::sigma_plus_mode ? s.n_plus : s.n_minus;
  }
  return n;
}

double hermiticity_error(const OperatorMatrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double max_abs(const OperatorMatrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

PhysicalityReport inspect_density(const DensityMatrix& rho) {
  PhysicalityReport r;
  r.hermiticity_error = hermiticity_error(rho);
  const Complex tr = rho.trace();
  r.trace_real = tr.real();
  r.trace_imag = tr.imag();
  const OperatorMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(herm, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = es.eigenvalues().minCoeff();
  return r;
}

bool is_physical(const PhysicalityReport& r, const PhysicalityTolerance& tol) {
  return r.hermiticity_error <= tol.hermiticity && r.trace_real <= 1.0 + tol.trace_excess &&
         r.trace_real >= -tol.trace_excess && std::abs(r.trace_imag) <= tol.hermiticity &&
         r.min_eigenvalue >= tol.min_eigenvalue;
}

SparseOperator to_sparse(const OperatorMatrix& a, double drop_below) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (std::abs(a(i, j)) > drop_below) triplets.emplace_back(i, j, a(i, j));
  SparseOperator s(a.rows(), a.cols());
  s.setFromTriplets(triplets.begin(), triplets.end());
  return s;
}

}  // namespace altpol
