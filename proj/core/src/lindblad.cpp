#include "altpol/lindblad.hpp"

#include <stdexcept>

namespace altpol {

namespace {

void check_shape(const OperatorMatrix& m, int dim, const std::string& what) {
  if (m.rows() != dim || m.cols() != dim)
    throw std::invalid_argument(what + ": operator dimension does not match dissipator");
}

}  // namespace

void Dissipator::add_channel(std::string label, OperatorMatrix jump, double rate) {
  if (!(rate >= 0.0)) throw std::invalid_argument("negative decay rate for channel '" + label + "'");
  check_shape(jump, dim_, label);
  channels_.push_back({std::move(label), std::move(jump), rate});
}

void Dissipator::add_sink(std::string label, OperatorMatrix projector, double rate) {
  if (!(rate >= 0.0)) throw std::invalid_argument("negative sink rate for '" + label + "'");
  check_shape(projector, dim_, label);
  sinks_.push_back({std::move(label), std::move(projector), rate});
}

DensityMatrix Dissipator::apply(const DensityMatrix& rho) const {
  DensityMatrix out = DensityMatrix::Zero(dim_, dim_);
  for (const auto& c : channels_) {
    const OperatorMatrix jdj = c.jump.adjoint() * c.jump;
    out += c.rate * (2.0 * c.jump * rho * c.jump.adjoint() - jdj * rho - rho * jdj);
  }
  for (const auto& s : sinks_) out -= s.rate * (s.projector * rho + rho * s.projector);
  return out;
}

OperatorMatrix Dissipator::damping() const {
  OperatorMatrix d = OperatorMatrix::Zero(dim_, dim_);
  for (const auto& c : channels_) d += c.rate * c.jump.adjoint() * c.jump;
  for (const auto& s : sinks_) d += s.rate * s.projector;
  return d;
}

Eigen::VectorXd Dissipator::sink_weights() const {
  Eigen::VectorXd w = Eigen::VectorXd::Zero(dim_);
  for (const auto& s : sinks_) w += 2.0 * s.rate * s.projector.diagonal().real();
  return w;
}

}  // namespace altpol
