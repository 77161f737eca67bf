#pragma once

#include <utility>
#include <vector>

namespace altpol {

enum class PulseKind { sin_squared, constant, tabulated };

/// Dimensionless pump envelope with peak 1 that scales the model's Rabi
/// frequency. Times in us.
struct PulseShape {
  PulseKind kind = PulseKind::sin_squared;
  double duration = 1.5;
  /// (time, value) samples for PulseKind::tabulated, linearly interpolated.
  /// Times strictly increasing, values in [0, 1].
  std::vector<std::pair<double, double>> table;

  static PulseShape sin_squared(double duration);
  static PulseShape constant(double duration);
  static PulseShape tabulated(std::vector<std::pair<double, double>> samples);

  /// Throws std::invalid_argument on a non-positive duration or a bad table.
  void validate() const;
};

/// sin^2(pi t / T) on [0, T], 0 elsewhere (and analogous for the other kinds).
double pulse_envelope(const PulseShape& shape, double t);

}  // namespace altpol
