#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "altpol/evolution.hpp"

namespace altpol {

/// Photon output and atomic transfer extracted from one trajectory.
struct EmissionRecord {
  std::vector<double> time;
  /// Emission probability density per us, 2 kappa <n>.
  std::vector<double> density_sigma_plus;
  std::vector<double> density_sigma_minus;
  /// Trapezoidal integrals of the densities over the window.
  double efficiency_sigma_plus = 0.0;
  double efficiency_sigma_minus = 0.0;
  /// pop(final) - pop(initial)
  std::vector<double> inversion;
  double loss_total = 0.0;
};

struct EmissionProbability {
  double sigma_plus = 0.0;
  double sigma_minus = 0.0;
  /// Summed density at the last time step.
  double tail_density = 0.0;
  /// Set when tail_density exceeds kTailWarningDensity: the window ended
  /// before the cavity emptied.
  bool truncated_tail = false;
};

inline constexpr double kTailWarningDensity = 1e-4;

std::pair<std::vector<double>, std::vector<double>> emission_density(const Trajectory& traj, Frequency kappa);

std::vector<double> inversion(const Trajectory& traj, std::string_view initial, std::string_view final_level);

/// Composite trapezoid rule on a uniform grid.
double trapezoid(const std::vector<double>& y, double dx);

struct LossBudget {
  /// 1 - tr(rho) at the end: population that decayed into sinks.
  double sink_trace_deficit = 0.0;
  double residual_initial = 0.0;
  double target_population = 0.0;
  /// Population in every modeled level other than initial and target.
  double modeled_other_levels = 0.0;
  /// Sink flux integrated along the trajectory; equals sink_trace_deficit.
  double integrated_sink_flux = 0.0;

  double total_loss() const { return sink_trace_deficit + modeled_other_levels; }
  /// deficit + residual + target + other; 1 up to rounding.
  double population_sum() const {
    return sink_trace_deficit + residual_initial + target_population + modeled_other_levels;
  }
  /// |tr(rho_final) + integrated sink flux - 1|
  double flux_closure_error() const;
};

LossBudget loss_budget(const Trajectory& traj, std::string_view initial, std::string_view target);

EmissionRecord make_emission_record(const Trajectory& traj, Frequency kappa, std::string_view initial,
                                    std::string_view target);

EmissionProbability emission_probability(const EmissionRecord& record);

}  // namespace altpol
