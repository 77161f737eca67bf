#include "altpol/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace altpol {

PulseShape PulseShape::sin_squared(double duration) {
  PulseShape p{PulseKind::sin_squared, duration, {}};
  p.validate();
  return p;
}

PulseShape PulseShape::constant(double duration) {
  PulseShape p{PulseKind::constant, duration, {}};
  p.validate();
  return p;
}

PulseShape PulseShape::tabulated(std::vector<std::pair<double, double>> samples) {
  PulseShape p{PulseKind::tabulated, samples.empty() ? 0.0 : samples.back().first, std::move(samples)};
  p.validate();
  return p;
}

void PulseShape::validate() const {
  if (!(duration > 0.0)) throw std::invalid_argument("pulse duration must be > 0");
  if (kind != PulseKind::tabulated) return;
  if (table.size() < 2) throw std::invalid_argument("tabulated pulse needs at least two samples");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto [t, v] = table[i];
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("tabulated pulse values must lie in [0, 1]");
    if (t < 0.0) throw std::invalid_argument("tabulated pulse times must be >= 0");
    if (i > 0 && !(t > table[i - 1].first))
      throw std::invalid_argument("tabulated pulse times must be strictly increasing");
  }
}

double pulse_envelope(const PulseShape& shape, double t) {
  if (t < 0.0 || t > shape.duration) return 0.0;
  switch (shape.kind) {
    case PulseKind::sin_squared: {
      const double s = std::sin(std::numbers::pi * t / shape.duration);
      return s * s;
    }
    case PulseKind::constant:
      return 1.0;
    case PulseKind::tabulated: {
      const auto& tab = shape.table;
      if (t <= tab.front().first) return t < tab.front().first ? 0.0 : tab.front().second;
      auto hi = std::lower_bound(tab.begin(), tab.end(), t,
                                 [](const auto& sample, double x) { return sample.first < x; });
      if (hi == tab.end()) return tab.back().second;
      auto lo = hi - 1;
      const double w = (t - lo->first) / (hi->first - lo->first);
      return lo->second + w * (hi->second - lo->second);
    }
  }
  return 0.0;
}

}  // namespace altpol
