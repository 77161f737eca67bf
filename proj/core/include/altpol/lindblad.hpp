#pragma once

#include <string>
#include <vector>

#include "altpol/operator_core.hpp"

namespace altpol {

/// One Lindblad decay channel in the convention used throughout the models:
///   rate * (2 J rho J^dagger - J^dagger J rho - rho J^dagger J)
/// `rate` is an angular rate (rad/us); the population in the upper state
/// decays at 2 * rate.
struct LindbladChannel {
  std::string label;
  OperatorMatrix jump;
  double rate = 0.0;
};

/// Incoherent loss out of the modeled space:
///   -rate * (P rho + rho P)
/// P is a (diagonal) projector. Trace leaves the system at 2 * rate * <P>.
struct SinkTerm {
  std::string label;
  OperatorMatrix projector;
  double rate = 0.0;
};

/// Superoperator rho -> L[rho] built from decay channels and sinks.
class Dissipator {
 public:
  explicit Dissipator(int dim = 0) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::vector<LindbladChannel>& channels() const { return channels_; }
  const std::vector<SinkTerm>& sinks() const { return sinks_; }

  /// Negative rates throw std::invalid_argument. Zero-rate channels are kept
  /// so that limiting cases produce structurally identical results.
  void add_channel(std::string label, OperatorMatrix jump, double rate);
  void add_sink(std::string label, OperatorMatrix projector, double rate);

  DensityMatrix apply(const DensityMatrix& rho) const;

  /// Hermitian damping operator D with  L[rho] = sum 2r J rho J^dag - (D rho + rho D).
  OperatorMatrix damping() const;

  /// Per-basis-state trace loss rate w so that d tr(rho)/dt = -sum_k w_k rho_kk.
  Eigen::VectorXd sink_weights() const;

 private:
  int dim_;
  std::vector<LindbladChannel> channels_;
  std::vector<SinkTerm> sinks_;
};

}  // namespace altpol
