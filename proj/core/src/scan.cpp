#include "altpol/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace altpol {

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
  if (!(hi >= lo)) throw std::invalid_argument("grid upper bound must be >= lower bound");
  const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) g[k] = lo + static_cast<double>(k) * step;
  return g;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ALTPOL_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  const auto workers = std::min<std::size_t>(n, static_cast<std::size_t>(resolve_threads(threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::size_t CavityScanResult::failures() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](auto& p) { return p.failed(); }));
}

namespace {

EmissionRun run_at(const SimulationSetup& setup, Frequency delta_ca, Frequency delta_cp, Ground start) {
  SimulationSetup s = setup;
  s.model = setup.model.with_detunings(delta_ca, delta_cp).with_initial_state(start);
  return run_emission(s);
}

double lambda_difference(const SimulationSetup& setup, double delta_ca_mhz) {
  const Frequency ca = Frequency::from_mhz(delta_ca_mhz);
  const EmissionRun plus = run_at(setup, ca, raman_delta_cp(setup.model, Ground::plus), Ground::plus);
  const EmissionRun minus = run_at(setup, ca, raman_delta_cp(setup.model, Ground::minus), Ground::minus);
  return plus.probability.sigma_plus - minus.probability.sigma_minus;
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

Root bisect(const std::function<double(double)>& f, double lo, double hi, double flo, double fhi,
            const CrossingOptions& o) {
  Root r{lo, lo, hi, std::abs(flo), false};
  if (std::abs(fhi) < r.residual) r = {hi, lo, hi, std::abs(fhi), false};
  for (int it = 0; it < o.max_iterations; ++it) {
    if (hi - lo <= o.resolution_mhz && r.residual < o.tolerance) break;
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= r.residual) {
      r.x = mid;
      r.residual = std::abs(fm);
    }
    if (std::abs(fm) < o.zero_threshold) {
      lo = hi = mid;
      break;
    }
    if (sign(fm) == sign(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  r.lo = lo;
  r.hi = hi;
  r.converged = hi - lo <= o.resolution_mhz && r.residual < o.tolerance;
  return r;
}

struct Bracket {
  double lo, hi, flo, fhi;
  bool exact;
};

std::vector<Bracket> brackets(const std::vector<double>& grid, const std::vector<double>& values, double zero) {
  if (grid.size() != values.size()) throw std::invalid_argument("find_roots: grid and values differ in size");
  std::vector<Bracket> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) continue;
    if (std::abs(v) < zero) {
      out.push_back({grid[i], grid[i], v, v, true});
      continue;
    }
    if (i + 1 == grid.size()) break;
    const double w = values[i + 1];
    if (!std::isfinite(w) || std::abs(w) < zero) continue;
    if (sign(v) != sign(w)) out.push_back({grid[i], grid[i + 1], v, w, false});
  }
  return out;
}

std::vector<Root> refine(const std::vector<Bracket>& bs, const std::function<double(double)>& f,
                         const CrossingOptions& o) {
  std::vector<Root> roots(bs.size());
  parallel_for(bs.size(), o.threads, [&](std::size_t k) {
    const Bracket& b = bs[k];
    roots[k] = b.exact ? Root{b.lo, b.lo, b.hi, std::abs(b.flo), true} : bisect(f, b.lo, b.hi, b.flo, b.fhi, o);
  });
  return roots;
}

}  // namespace

CavityScanPoint evaluate_cavity_point(const SimulationSetup& setup, double delta_ca_mhz) {
  CavityScanPoint p;
  p.delta_ca_mhz = delta_ca_mhz;
  try {
    const Frequency ca = Frequency::from_mhz(delta_ca_mhz);
    const Frequency cp_plus = raman_delta_cp(setup.model, Ground::plus);
    const Frequency cp_minus = raman_delta_cp(setup.model, Ground::minus);
    const EmissionRun lp = run_at(setup, ca, cp_plus, Ground::plus);
    const EmissionRun cp = run_at(setup, ca, cp_plus, Ground::minus);
    const EmissionRun lm = run_at(setup, ca, cp_minus, Ground::minus);
    const EmissionRun cm = run_at(setup, ca, cp_minus, Ground::plus);
    p.lambda_sigma_plus = lp.probability.sigma_plus;
    p.cycling_sigma_plus = cp.probability.sigma_plus;
    p.lambda_sigma_minus = lm.probability.sigma_minus;
    p.cycling_sigma_minus = cm.probability.sigma_minus;
    p.loss_sigma_plus = lp.losses.total_loss();
    p.loss_sigma_minus = lm.losses.total_loss();
    p.truncated_tail = lp.probability.truncated_tail || lm.probability.truncated_tail ||
                       cp.probability.truncated_tail || cm.probability.truncated_tail;
  } catch (const std::exception& e) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    p.lambda_sigma_plus = p.lambda_sigma_minus = p.cycling_sigma_plus = p.cycling_sigma_minus = nan;
    p.loss_sigma_plus = p.loss_sigma_minus = nan;
    p.failure = e.what();
  }
  return p;
}

CavityScanResult scan_cavity_detuning(const SimulationSetup& setup, const std::vector<double>& grid_mhz,
                                      int threads) {
  if (!std::is_sorted(grid_mhz.begin(), grid_mhz.end()))
    throw std::invalid_argument("scan_cavity_detuning: grid must be sorted ascending");
  CavityScanResult r;
  r.model = setup.model.kind;
  r.points.resize(grid_mhz.size());
  parallel_for(grid_mhz.size(), threads,
               [&](std::size_t i) { r.points[i] = evaluate_cavity_point(setup, grid_mhz[i]); });
  return r;
}

std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y, double min_height) {
  if (x.size() != y.size()) throw std::invalid_argument("find_peaks: size mismatch");
  std::vector<Peak> peaks;
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(y[i]) || y[i] < min_height) continue;
    if (i > 0 && !(y[i] > y[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < n && y[j + 1] == y[i]) ++j;
    if (j + 1 < n && !(y[j + 1] < y[i])) continue;
    if (i == 0 && j + 1 == n) continue;

    Peak p{i, x[i], y[i], -1.0};
    const double half = 0.5 * y[i];
    std::size_t l = i;
    while (l > 0 && y[l] >= half) --l;
    std::size_t r = j;
    while (r + 1 < n && y[r] >= half) ++r;
    if (y[l] < half && y[r] < half) {
      const double xl = x[l] + (half - y[l]) * (x[l + 1] - x[l]) / (y[l + 1] - y[l]);
      const double xr = x[r - 1] + (y[r - 1] - half) * (x[r] - x[r - 1]) / (y[r - 1] - y[r]);
      p.fwhm = xr - xl;
    }
    peaks.push_back(p);
  }
  return peaks;
}

std::vector<double> PumpScanResult::axis() const {
  std::vector<double> a;
  for (const auto& p : points) a.push_back(p.delta_cp_mhz);
  return a;
}

std::vector<double> PumpScanResult::total_from(Ground g) const {
  std::vector<double> y;
  for (const auto& p : points) y.push_back(g == Ground::plus ? p.from_plus.total() : p.from_minus.total());
  return y;
}

std::size_t PumpScanResult::failures() const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [](auto& p) { return p.failed(); }));
}

PumpScanResult scan_pump_detuning(const SimulationSetup& setup, double delta_ca_mhz,
                                  const std::vector<double>& grid_mhz, int threads) {
  if (!std::is_sorted(grid_mhz.begin(), grid_mhz.end()))
    throw std::invalid_argument("scan_pump_detuning: grid must be sorted ascending");
  PumpScanResult r;
  r.delta_ca_mhz = delta_ca_mhz;
  r.points.resize(grid_mhz.size());
  const Frequency ca = Frequency::from_mhz(delta_ca_mhz);
  parallel_for(grid_mhz.size(), threads, [&](std::size_t i) {
    PumpScanPoint& p = r.points[i];
    p.delta_cp_mhz = grid_mhz[i];
    try {
      const Frequency cp = Frequency::from_mhz(grid_mhz[i]);
      const EmissionRun a = run_at(setup, ca, cp, Ground::plus);
      const EmissionRun b = run_at(setup, ca, cp, Ground::minus);
      p.from_plus = {a.probability.sigma_plus, a.probability.sigma_minus};
      p.from_minus = {b.probability.sigma_plus, b.probability.sigma_minus};
      p.truncated_tail = a.probability.truncated_tail || b.probability.truncated_tail;
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      p.from_plus = p.from_minus = {nan, nan};
      p.failure = e.what();
    }
  });
  return r;
}

std::vector<Root> find_roots(const std::vector<double>& grid, const std::vector<double>& values,
                             const std::function<double(double)>& f, const CrossingOptions& options) {
  return refine(brackets(grid, values, options.zero_threshold), f, options);
}

std::vector<Crossing> find_equal_efficiency_detunings(const SimulationSetup& setup, const CavityScanResult& scan,
                                                      const CrossingOptions& options) {
  std::vector<double> grid, diff;
  for (const auto& p : scan.points) {
    grid.push_back(p.delta_ca_mhz);
    diff.push_back(p.lambda_sigma_plus - p.lambda_sigma_minus);
  }
  const auto f = [&](double x) { return lambda_difference(setup, x); };
  const std::vector<Root> roots = find_roots(grid, diff, f, options);

  std::vector<Crossing> out(roots.size());
  parallel_for(roots.size(), options.threads, [&](std::size_t k) {
    const Root& r = roots[k];
    out[k] = {r.x, r.lo, r.hi, r.residual, r.converged, evaluate_cavity_point(setup, r.x)};
  });
  return out;
}

std::vector<Crossing> find_equal_efficiency_detunings(const SimulationSetup& setup,
                                                      const std::vector<double>& grid_mhz,
                                                      const CrossingOptions& options) {
  return find_equal_efficiency_detunings(setup, scan_cavity_detuning(setup, grid_mhz, options.threads), options);
}

}  // namespace altpol
