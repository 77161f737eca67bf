#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

#include "altpol/commands.hpp"
#include "altpol/output.hpp"
#include "altpol/version.hpp"
#include "test_support.hpp"

namespace altpol {
namespace {

namespace fs = std::filesystem;

TEST(Csv, NumberFormat) {
  EXPECT_EQ(format_number(0.78), "7.80000000000e-01");
  EXPECT_EQ(format_number(-1234.5), "-1.23450000000e+03");
  EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN()), "nan");
}

TEST(Csv, HeaderRowsAndSanitizedText) {
  CsvTable t({"a_mhz", "b", "status"});
  t.add_row({1.0, 2.0}, "bad, really\nbad");
  EXPECT_THROW(t.add_row({1.0}), std::invalid_argument);
  std::ostringstream out;
  t.write(out);
  EXPECT_EQ(out.str(), "a_mhz,b,status\n1.00000000000e+00,2.00000000000e+00,bad  really bad\n");
}

TEST(Commands, Names) {
  for (Command c : {Command::evolve, Command::scan_cavity, Command::scan_pump, Command::crossings})
    EXPECT_EQ(parse_command(to_string(c)), c);
  EXPECT_FALSE(parse_command("scan").has_value());
}

TEST(RunCommand, EvolveWritesFilesAndManifest) {
  const fs::path dir = support::scratch_dir("evolve");
  std::ostringstream log;
  RunOptions opt;
  opt.out_dir = dir;
  opt.command_line = "altpol evolve";
  ASSERT_EQ(run_command(preset("ideal-paper"), Command::evolve, opt, log), kExitOk) << log.str();
  EXPECT_NE(log.str().find("P(sigma+) = 0.78"), std::string::npos) << log.str();

  const std::string traj = support::read_file(dir / "trajectory.csv");
  EXPECT_EQ(traj.rfind("time_us,envelope,density_sigma_plus_per_us", 0), 0u);
  const std::string manifest = support::read_file(dir / "manifest.txt");
  EXPECT_NE(manifest.find(kVersion), std::string::npos);
  EXPECT_NE(manifest.find("altpol evolve"), std::string::npos);
  EXPECT_NE(manifest.find("trajectory.csv"), std::string::npos);

  // The manifest carries the complete resolved configuration.
  ExperimentConfig resolved = preset("ideal-paper");
  resolved.out_dir = dir.string();
  EXPECT_EQ(parse_config(manifest), resolved);

  // Integrating the sigma+ density column reproduces the emission probability.
  std::istringstream rows(traj);
  std::string line;
  std::getline(rows, line);
  std::vector<double> density;
  while (std::getline(rows, line)) {
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    const auto c = line.find(',', b + 1);
    density.push_back(std::stod(line.substr(b + 1, c - b - 1)));
  }
  EXPECT_NEAR(trapezoid(density, 1e-3), 0.78, 0.02);
}

TEST(RunCommand, ByteIdenticalAcrossRunsAndThreads) {
  ExperimentConfig c = preset("ideal-paper");
  c.cavity_grid = {-6.0, 6.0, 3.0};
  std::ostringstream log;
  RunOptions opt;
  std::vector<std::string> outputs;
  for (int threads : {1, 1, 3}) {
    c.threads = threads;
    opt.out_dir = support::scratch_dir("repeat" + std::to_string(outputs.size()));
    ASSERT_EQ(run_command(c, Command::scan_cavity, opt, log), kExitOk);
    outputs.push_back(support::read_file(opt.out_dir / "scan_cavity.csv"));
  }
  EXPECT_EQ(outputs[0], outputs[1]);
  EXPECT_EQ(outputs[0], outputs[2]);
}

TEST(RunCommand, StrictModeFailsOnBadPoints) {
  ExperimentConfig c = preset("rb87-paper");
  c.dt_us = c.dt_max_us = 0.05;
  c.cavity_grid = {60.0, 61.0, 1.0};
  RunOptions opt;
  opt.out_dir = support::scratch_dir("strict");
  std::ostringstream log;
  EXPECT_EQ(run_command(c, Command::scan_cavity, opt, log), kExitOk);
  EXPECT_NE(log.str().find("2 of 2 grid points failed"), std::string::npos) << log.str();
  const std::string csv = support::read_file(opt.out_dir / "scan_cavity.csv");
  EXPECT_NE(csv.find("nan"), std::string::npos);
  opt.strict = true;
  EXPECT_EQ(run_command(c, Command::scan_cavity, opt, log), kExitStrictFailure);
}

TEST(RunCommand, InvalidConfigIsAnError) {
  ExperimentConfig c = preset("ideal-paper");
  c.kappa_mhz = -1.0;
  RunOptions opt;
  opt.out_dir = support::scratch_dir("invalid");
  std::ostringstream log;
  EXPECT_EQ(run_command(c, Command::evolve, opt, log), kExitError);
  EXPECT_NE(log.str().find("kappa_mhz"), std::string::npos);
  EXPECT_FALSE(fs::exists(opt.out_dir / "trajectory.csv"));
}

/// Each directory under tests/golden holds config.ini, a one-word `command`
/// file and the CSV files that command produced. Regenerate with
/// tools/regen_golden.sh after an intentional numerical change.
TEST(Golden, OutputsMatchCheckedInFiles) {
  const fs::path root = ALTPOL_GOLDEN_DIR;
  ASSERT_TRUE(fs::is_directory(root));
  std::vector<fs::path> cases;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory()) cases.push_back(e.path());
  std::sort(cases.begin(), cases.end());
  ASSERT_GE(cases.size(), 4u);

  for (const fs::path& dir : cases) {
    SCOPED_TRACE(dir.filename().string());
    std::string name = support::read_file(dir / "command");
    while (!name.empty() && std::isspace(static_cast<unsigned char>(name.back()))) name.pop_back();
    const auto command = parse_command(name);
    ASSERT_TRUE(command.has_value()) << name;
    const ExperimentConfig config = parse_config(support::read_file(dir / "config.ini"));

    RunOptions opt;
    opt.out_dir = support::scratch_dir("golden_" + dir.filename().string());
    std::ostringstream log;
    ASSERT_EQ(run_command(config, *command, opt, log), kExitOk) << log.str();

    int compared = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.path().extension() != ".csv") continue;
      ++compared;
      const fs::path fresh = opt.out_dir / e.path().filename();
      ASSERT_TRUE(fs::exists(fresh)) << fresh;
      EXPECT_TRUE(support::read_file(fresh) == support::read_file(e.path())) << e.path().filename();
    }
    EXPECT_GT(compared, 0);
  }
}

}  // namespace
}  // namespace altpol
