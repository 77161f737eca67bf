#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "altpol/config.hpp"
#include "altpol/scan.hpp"

namespace altpol {

/// Column-oriented comma-separated table. Numbers are written in scientific
/// notation with 12 significant digits; column names carry their units.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  void add_row(const std::vector<double>& values);
  /// Row with a trailing free-text column (e.g. a status message).
  void add_row(const std::vector<double>& values, const std::string& text);

  std::size_t rows() const { return rows_.size(); }
  void write(std::ostream& out) const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> rows_;
};

/// "%.11e", with NaN written as "nan".
std::string format_number(double v);

CsvTable trajectory_table(const EmissionRun& run);
CsvTable summary_table(const EmissionRun& run);
CsvTable cavity_scan_table(const CavityScanResult& scan);
CsvTable pump_scan_table(const PumpScanResult& scan);
CsvTable peak_table(const PumpScanResult& scan, double min_height);
CsvTable crossing_table(const std::vector<Crossing>& crossings);

struct Manifest {
  std::string command;
  std::string command_line;
  std::string timestamp;
  ExperimentConfig config;
  std::vector<std::string> files;
};

/// UTC, ISO 8601.
std::string utc_timestamp();

void write_manifest(const std::filesystem::path& path, const Manifest& manifest);

}  // namespace altpol
