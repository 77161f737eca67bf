#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "altpol/experiment.hpp"

namespace altpol {

/// Evenly spaced grid from `lo` to `hi` inclusive. Points are computed as
/// lo + k * step so that grids are reproducible bit for bit.
std::vector<double> make_grid(double lo, double hi, double step);

/// Worker count: `requested` if > 0, else the ALTPOL_THREADS environment
/// variable, else std::thread::hardware_concurrency().
int resolve_threads(int requested);

/// Calls body(i) for i in [0, n) on up to `threads` workers. Work items must
/// write only to their own slot; the first exception is rethrown.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

/// One point of the cavity-atom detuning scan. The Lambda curves start in the
/// state that the pump setting transfers out of; the cycling curves keep the
/// same pump setting but start in the other ground state.
struct CavityScanPoint {
  double delta_ca_mhz = 0.0;
  double lambda_sigma_plus = 0.0;
  double lambda_sigma_minus = 0.0;
  double cycling_sigma_plus = 0.0;
  double cycling_sigma_minus = 0.0;
  double loss_sigma_plus = 0.0;
  double loss_sigma_minus = 0.0;
  bool truncated_tail = false;
  std::string failure;

  bool failed() const { return !failure.empty(); }
};

struct CavityScanResult {
  ModelKind model = ModelKind::ideal;
  std::vector<CavityScanPoint> points;

  std::size_t failures() const;
};

/// Evaluates all four curves at one detuning with the pump held on the
/// Raman resonance of each direction.
CavityScanPoint evaluate_cavity_point(const SimulationSetup& setup, double delta_ca_mhz);

CavityScanResult scan_cavity_detuning(const SimulationSetup& setup, const std::vector<double>& grid_mhz,
                                      int threads = 0);

struct EfficiencyPair {
  double sigma_plus = 0.0;
  double sigma_minus = 0.0;

  double total() const { return sigma_plus + sigma_minus; }
};

struct PumpScanPoint {
  double delta_cp_mhz = 0.0;
  EfficiencyPair from_plus;
  EfficiencyPair from_minus;
  bool truncated_tail = false;
  std::string failure;

  bool failed() const { return !failure.empty(); }
};

struct Peak {
  std::size_t index = 0;
  double position = 0.0;
  double height = 0.0;
  /// Full width at half maximum from linear interpolation; negative when the
  /// curve does not fall below half height on both sides within the grid.
  double fwhm = -1.0;
};

/// Strict local maxima (plateaus count once, at their first point) with
/// height >= min_height.
std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y, double min_height);

struct PumpScanResult {
  double delta_ca_mhz = 0.0;
  std::vector<PumpScanPoint> points;

  std::vector<double> axis() const;
  /// Total emission (sigma+ plus sigma-) for the given start state.
  std::vector<double> total_from(Ground g) const;
  std::size_t failures() const;
};

/// Emission versus cavity-pump detuning at fixed cavity-atom detuning, for
/// both initial ground states.
PumpScanResult scan_pump_detuning(const SimulationSetup& setup, double delta_ca_mhz,
                                  const std::vector<double>& grid_mhz, int threads = 0);

struct CrossingOptions {
  /// Bisection stops once the bracket is narrower than this and |P+ - P-| < tolerance.
  double resolution_mhz = 0.1;
  double tolerance = 1e-3;
  /// |P+ - P-| below this on a grid point counts as an exact zero.
  double zero_threshold = 1e-9;
  int max_iterations = 60;
  int threads = 0;
};

struct Crossing {
  double delta_ca_mhz = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  /// |P+ - P-| at delta_ca_mhz.
  double residual = 0.0;
  bool converged = false;
  CavityScanPoint point;
};

/// Sign changes of f on the grid, refined by bisection. A grid point where
/// |f| < zero_threshold is returned as its own root.
struct Root {
  double x = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double residual = 0.0;
  bool converged = false;
};
std::vector<Root> find_roots(const std::vector<double>& grid, const std::vector<double>& values,
                             const std::function<double(double)>& f, const CrossingOptions& options);

/// Detunings where the Lambda efficiencies P+ and P- are equal. All crossings
/// found are returned; the count is not coerced.
std::vector<Crossing> find_equal_efficiency_detunings(const SimulationSetup& setup,
                                                      const std::vector<double>& grid_mhz,
                                                      const CrossingOptions& options = {});

/// Same as above but reusing an existing cavity scan for the bracketing pass.
std::vector<Crossing> find_equal_efficiency_detunings(const SimulationSetup& setup, const CavityScanResult& scan,
                                                      const CrossingOptions& options = {});

}  // namespace altpol
