#pragma once

#include <numbers>

namespace altpol {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Bohr magneton divided by Planck's constant, in MHz per Gauss.
inline constexpr double kBohrMagnetonMHzPerGauss = 1.399624;

/// A frequency that is entered as nu = omega / 2pi in MHz and used internally
/// as an angular frequency in rad/us. Time is measured in microseconds
/// throughout, so angular() can be multiplied with times directly.
///
/// The factor 2pi is applied exactly once, in from_mhz().
class Frequency {
 public:
  constexpr Frequency() = default;

  static constexpr Frequency from_mhz(double nu_mhz) { return Frequency(kTwoPi * nu_mhz); }
  static constexpr Frequency from_angular(double rad_per_us) { return Frequency(rad_per_us); }

  constexpr double angular() const { return angular_; }
  constexpr double mhz() const { return angular_ / kTwoPi; }

  constexpr Frequency operator-() const { return Frequency(-angular_); }
  constexpr Frequency operator+(Frequency o) const { return Frequency(angular_ + o.angular_); }
  constexpr Frequency operator-(Frequency o) const { return Frequency(angular_ - o.angular_); }
  constexpr Frequency operator*(double s) const { return Frequency(angular_ * s); }
  constexpr bool operator==(const Frequency&) const = default;

 private:
  constexpr explicit Frequency(double angular) : angular_(angular) {}
  double angular_ = 0.0;
};

constexpr Frequency operator*(double s, Frequency f) { return f * s; }

}  // namespace altpol
