#include <cmath>
#include <stdexcept>

#include "altpol/evolution.hpp"

namespace altpol {

namespace {

SparseSuperoperator kron(const SparseOperator& a, const SparseOperator& b) {
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SparseOperator::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SparseOperator::InnerIterator ib(b, kb); ib; ++ib)
          triplets.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                ia.value() * ib.value());
  SparseSuperoperator out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

SparseOperator identity(int dim) {
  SparseOperator id(dim, dim);
  id.setIdentity();
  return id;
}

/// -i (H rho - rho H)
SparseSuperoperator commutator_super(const OperatorMatrix& h) {
  const SparseOperator hs = to_sparse(h);
  const SparseOperator id = identity(static_cast<int>(h.rows()));
  const SparseOperator ht = hs.transpose();
  return Complex(0.0, -1.0) * (kron(id, hs) - kron(ht, id));
}

/// -(A rho + rho A)
SparseSuperoperator anticommutator_super(const OperatorMatrix& a) {
  const SparseOperator as = to_sparse(a);
  const SparseOperator id = identity(static_cast<int>(a.rows()));
  const SparseOperator at = as.transpose();
  return -(kron(id, as) + kron(at, id));
}

}  // namespace

double norm1(const SparseSuperoperator& a) {
  double best = 0.0;
  for (int k = 0; k < a.outerSize(); ++k) {
    double col = 0.0;
    for (SparseSuperoperator::InnerIterator it(a, k); it; ++it) col += std::abs(it.value());
    best = std::max(best, col);
  }
  return best;
}

Liouvillian build_liouvillian(const MasterEquation& eq) {
  Liouvillian l;
  l.stationary = commutator_super(eq.h_static + eq.h_cavity);
  for (const auto& c : eq.dissipator.channels()) {
    const SparseOperator j = to_sparse(c.jump);
    const SparseOperator j_conj = j.conjugate();
    const OperatorMatrix jdj = c.jump.adjoint() * c.jump;
    l.stationary += c.rate * (2.0 * kron(j_conj, j) + anticommutator_super(jdj));
  }
  for (const auto& s : eq.dissipator.sinks()) l.stationary += s.rate * anticommutator_super(s.projector);
  l.pump = commutator_super(eq.h_pump);
  l.stationary.makeCompressed();
  l.pump.makeCompressed();
  return l;
}

Eigen::VectorXcd expm_action(const SparseSuperoperator& a, const Eigen::VectorXcd& v, double norm1_bound) {
  const int substeps = std::max(1, static_cast<int>(std::ceil(norm1_bound)));
  const double scale = 1.0 / substeps;
  Eigen::VectorXcd acc = v;
  for (int s = 0; s < substeps; ++s) {
    Eigen::VectorXcd term = acc;
    Eigen::VectorXcd sum = acc;
    int small_terms = 0;
    for (int k = 1; k <= 80; ++k) {
      term = (scale / k) * (a * term);
      sum += term;
      const double tn = term.cwiseAbs().maxCoeff();
      const double sn = sum.cwiseAbs().maxCoeff();
      small_terms = tn <= 1e-18 * std::max(sn, 1e-300) ? small_terms + 1 : 0;
      if (small_terms >= 2) break;
    }
    acc = sum;
  }
  return acc;
}

DensityMatrix propagator_oracle(const MasterEquation& eq, const DensityMatrix& rho0, const PulseShape& pulse,
                                double duration, const OracleOptions& options) {
  const int dim = eq.space.total_dim();
  if (rho0.rows() != dim || rho0.cols() != dim)
    throw std::invalid_argument("propagator_oracle: initial state has wrong dimension");
  const auto super_dim = static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim);
  if (super_dim > options.max_superoperator_dim)
    throw std::length_error("propagator_oracle: superoperator dimension " + std::to_string(super_dim) +
                            " exceeds cap " + std::to_string(options.max_superoperator_dim));
  if (options.n_slices < 10) throw std::invalid_argument("propagator_oracle: n_slices must be >= 10");
  if (duration < 0.0) throw std::invalid_argument("propagator_oracle: negative duration");
  if (duration == 0.0) return rho0;

  const Liouvillian l = build_liouvillian(eq);
  const double n0 = norm1(l.stationary);
  const double n1 = norm1(l.pump);
  SparseSuperoperator comm;
  double nc = 0.0;
  if (options.scheme == OracleScheme::magnus4) {
    comm = SparseSuperoperator(l.pump * l.stationary) - SparseSuperoperator(l.stationary * l.pump);
    comm.prune(Complex(0.0, 0.0));
    nc = norm1(comm);
  }

  const double h = duration / options.n_slices;
  const double gauss = std::sqrt(3.0) / 6.0;
  const double magnus_c = std::sqrt(3.0) / 12.0 * h * h;

  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), rho0.size());
  for (int k = 0; k < options.n_slices; ++k) {
    const double t0 = k * h;
    SparseSuperoperator exponent;
    double bound = 0.0;
    if (options.scheme == OracleScheme::midpoint) {
      const double s = pulse_envelope(pulse, t0 + 0.5 * h);
      exponent = h * l.stationary + (h * s) * l.pump;
      bound = h * n0 + std::abs(h * s) * n1;
    } else {
      const double s1 = pulse_envelope(pulse, t0 + (0.5 - gauss) * h);
      const double s2 = pulse_envelope(pulse, t0 + (0.5 + gauss) * h);
      const double b = magnus_c * (s2 - s1);
      exponent = h * l.stationary + (0.5 * h * (s1 + s2)) * l.pump;
      if (b != 0.0) exponent += b * comm;
      bound = h * n0 + std::abs(0.5 * h * (s1 + s2)) * n1 + std::abs(b) * nc;
    }
    v = expm_action(exponent, v, bound);
  }
  return Eigen::Map<const DensityMatrix>(v.data(), dim, dim);
}

}  // namespace altpol
