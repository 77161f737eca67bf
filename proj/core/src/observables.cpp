#include "altpol/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace altpol {

std::pair<std::vector<double>, std::vector<double>> emission_density(const Trajectory& traj, Frequency kappa) {
  const double rate = 2.0 * kappa.angular();
  std::vector<double> plus(traj.steps()), minus(traj.steps());
  for (std::size_t k = 0; k < traj.steps(); ++k) {
    // <n> is a sum of diagonal entries; clamp rounding noise around an empty cavity.
    plus[k] = std::max(0.0, rate * traj.n_plus[k]);
    minus[k] = std::max(0.0, rate * traj.n_minus[k]);
  }
  return {std::move(plus), std::move(minus)};
}

std::vector<double> inversion(const Trajectory& traj, std::string_view initial, std::string_view final_level) {
  const int i = traj.level_index(initial);
  const int f = traj.level_index(final_level);
  std::vector<double> out(traj.steps());
  for (std::size_t k = 0; k < traj.steps(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    out[k] = traj.populations(row, f) - traj.populations(row, i);
  }
  return out;
}

double trapezoid(const std::vector<double>& y, double dx) {
  if (y.size() < 2) return 0.0;
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t k = 1; k + 1 < y.size(); ++k) s += y[k];
  return s * dx;
}

double LossBudget::flux_closure_error() const {
  return std::abs((1.0 - sink_trace_deficit) + integrated_sink_flux - 1.0);
}

LossBudget loss_budget(const Trajectory& traj, std::string_view initial, std::string_view target) {
  if (traj.steps() == 0) throw std::invalid_argument("loss_budget: empty trajectory");
  const auto last = static_cast<Eigen::Index>(traj.steps() - 1);
  const int i = traj.level_index(initial);
  const int t = traj.level_index(target);
  LossBudget b;
  b.sink_trace_deficit = 1.0 - traj.trace.back();
  b.residual_initial = traj.populations(last, i);
  b.target_population = traj.populations(last, t);
  for (int l = 0; l < traj.populations.cols(); ++l)
    if (l != i && l != t) b.modeled_other_levels += traj.populations(last, l);
  b.integrated_sink_flux = traj.sink_loss.back();
  return b;
}

EmissionRecord make_emission_record(const Trajectory& traj, Frequency kappa, std::string_view initial,
                                    std::string_view target) {
  EmissionRecord r;
  r.time = traj.time;
  auto [plus, minus] = emission_density(traj, kappa);
  r.density_sigma_plus = std::move(plus);
  r.density_sigma_minus = std::move(minus);
  r.efficiency_sigma_plus = trapezoid(r.density_sigma_plus, traj.dt);
  r.efficiency_sigma_minus = trapezoid(r.density_sigma_minus, traj.dt);
  r.inversion = inversion(traj, initial, target);
  r.loss_total = loss_budget(traj, initial, target).total_loss();
  return r;
}

EmissionProbability emission_probability(const EmissionRecord& record) {
  EmissionProbability p;
  p.sigma_plus = record.efficiency_sigma_plus;
  p.sigma_minus = record.efficiency_sigma_minus;
  if (!record.time.empty())
    p.tail_density = record.density_sigma_plus.back() + record.density_sigma_minus.back();
  p.truncated_tail = p.tail_density > kTailWarningDensity;
  return p;
}

}  // namespace altpol
