#include "altpol/output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "altpol/version.hpp"

namespace altpol {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != columns_.size()) throw std::invalid_argument("CsvTable: row width does not match header");
  std::string row;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) row += ',';
    row += format_number(values[k]);
  }
  rows_.push_back(std::move(row));
}

void CsvTable::add_row(const std::vector<double>& values, const std::string& text) {
  if (values.size() + 1 != columns_.size()) throw std::invalid_argument("CsvTable: row width does not match header");
  std::string row;
  for (double v : values) row += format_number(v) + ',';
  // Free text must not break the column structure.
  std::string clean = text;
  for (char& ch : clean)
    if (ch == ',' || ch == '\n' || ch == '\r') ch = ' ';
  rows_.push_back(row + clean);
}

void CsvTable::write(std::ostream& out) const {
  for (std::size_t k = 0; k < columns_.size(); ++k) out << (k ? "," : "") << columns_[k];
  out << '\n';
  for (const auto& r : rows_) out << r << '\n';
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write(f);
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

CsvTable trajectory_table(const EmissionRun& run) {
  const Trajectory& t = run.trajectory;
  const EmissionRecord& r = run.record;
  std::vector<std::string> cols = {"time_us",
                                   "envelope",
                                   "density_sigma_plus_per_us",
                                   "density_sigma_minus_per_us",
                                   "density_total_per_us",
                                   "inversion",
                                   "n_sigma_plus",
                                   "n_sigma_minus",
                                   "trace",
                                   "emitted_sigma_plus",
                                   "emitted_sigma_minus",
                                   "sink_loss"};
  for (const auto& l : t.levels) cols.push_back("pop_" + l);
  CsvTable table(std::move(cols));
  for (std::size_t k = 0; k < t.steps(); ++k) {
    std::vector<double> row = {t.time[k],
                               t.envelope[k],
                               r.density_sigma_plus[k],
                               r.density_sigma_minus[k],
                               r.density_sigma_plus[k] + r.density_sigma_minus[k],
                               r.inversion[k],
                               t.n_plus[k],
                               t.n_minus[k],
                               t.trace[k],
                               t.leaked_plus[k],
                               t.leaked_minus[k],
                               t.sink_loss[k]};
    for (Eigen::Index l = 0; l < t.populations.cols(); ++l)
      row.push_back(t.populations(static_cast<Eigen::Index>(k), l));
    table.add_row(row);
  }
  return table;
}

CsvTable summary_table(const EmissionRun& run) {
  const LossBudget& b = run.losses;
  CsvTable table({"efficiency_sigma_plus", "efficiency_sigma_minus", "final_inversion", "loss_total",
                  "sink_trace_deficit", "residual_initial", "target_population", "modeled_other_levels",
                  "tail_density_per_us", "truncated_tail"});
  table.add_row({run.probability.sigma_plus, run.probability.sigma_minus, run.record.inversion.back(),
                 b.total_loss(), b.sink_trace_deficit, b.residual_initial, b.target_population,
                 b.modeled_other_levels, run.probability.tail_density, run.probability.truncated_tail ? 1.0 : 0.0});
  return table;
}

CsvTable cavity_scan_table(const CavityScanResult& scan) {
  CsvTable table({"delta_ca_mhz", "lambda_sigma_plus", "lambda_sigma_minus", "cycling_sigma_plus",
                  "cycling_sigma_minus", "loss_sigma_plus", "loss_sigma_minus", "truncated_tail", "status"});
  for (const auto& p : scan.points)
    table.add_row({p.delta_ca_mhz, p.lambda_sigma_plus, p.lambda_sigma_minus, p.cycling_sigma_plus,
                   p.cycling_sigma_minus, p.loss_sigma_plus, p.loss_sigma_minus, p.truncated_tail ? 1.0 : 0.0},
                  p.failed() ? "failed: " + p.failure : "ok");
  return table;
}

CsvTable pump_scan_table(const PumpScanResult& scan) {
  CsvTable table({"delta_cp_mhz", "from_plus_sigma_plus", "from_plus_sigma_minus", "from_minus_sigma_plus",
                  "from_minus_sigma_minus", "truncated_tail", "status"});
  for (const auto& p : scan.points)
    table.add_row({p.delta_cp_mhz, p.from_plus.sigma_plus, p.from_plus.sigma_minus, p.from_minus.sigma_plus,
                   p.from_minus.sigma_minus, p.truncated_tail ? 1.0 : 0.0},
                  p.failed() ? "failed: " + p.failure : "ok");
  return table;
}

CsvTable peak_table(const PumpScanResult& scan, double min_height) {
  CsvTable table({"start_state", "delta_cp_mhz", "height", "fwhm_mhz"});
  const std::vector<double> x = scan.axis();
  for (Ground g : {Ground::plus, Ground::minus})
    for (const Peak& p : find_peaks(x, scan.total_from(g), min_height))
      table.add_row({g == Ground::plus ? 1.0 : -1.0, p.position, p.height, p.fwhm});
  return table;
}

CsvTable crossing_table(const std::vector<Crossing>& crossings) {
  CsvTable table({"delta_ca_mhz", "bracket_lo_mhz", "bracket_hi_mhz", "residual", "converged",
                  "efficiency_sigma_plus", "efficiency_sigma_minus", "cycling_sigma_plus", "cycling_sigma_minus",
                  "loss_sigma_plus", "loss_sigma_minus"});
  for (const auto& c : crossings)
    table.add_row({c.delta_ca_mhz, c.bracket_lo, c.bracket_hi, c.residual, c.converged ? 1.0 : 0.0,
                   c.point.lambda_sigma_plus, c.point.lambda_sigma_minus, c.point.cycling_sigma_plus,
                   c.point.cycling_sigma_minus, c.point.loss_sigma_plus, c.point.loss_sigma_minus});
  return table;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_manifest(const std::filesystem::path& path, const Manifest& m) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << "# altpol run manifest\n"
    << "# version = " << kVersion << '\n'
    << "# command = " << m.command << '\n'
    << "# command_line = " << m.command_line << '\n'
    << "# timestamp = " << m.timestamp << '\n';
  for (const auto& file : m.files) f << "# output = " << file << '\n';
  f << "# resolved configuration follows; it parses as a config file\n\n" << serialize(m.config);
}

}  // namespace altpol
