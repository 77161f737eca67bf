#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>

#include "altpol/config.hpp"
#include "altpol/evolution.hpp"
#include "altpol/experiment.hpp"
#include "altpol/scan.hpp"

namespace altpol {
namespace {

SimulationSetup setup_for(int which) { return to_setup(preset(which == 0 ? "ideal-paper" : "rb87-paper")); }

DensityMatrix start_state(const SimulationSetup& s, const MasterEquation& eq) {
  return pure_state(eq.space, ground_label(s.model.kind, Ground::plus));
}

// Dense textbook form of the generator, used by the tests as a reference.
void BM_ReferenceRhs(benchmark::State& state) {
  const SimulationSetup s = setup_for(static_cast<int>(state.range(0)));
  const MasterEquation eq = build_model(s.model);
  const DensityMatrix rho = start_state(s, eq);
  for (auto _ : state) benchmark::DoNotOptimize(eq.rhs(0.5, rho));
  state.SetLabel("dim " + std::to_string(eq.space.total_dim()));
}
BENCHMARK(BM_ReferenceRhs)->Arg(0)->Arg(1);

void BM_Rk4Steps(benchmark::State& state) {
  const SimulationSetup s = setup_for(static_cast<int>(state.range(0)));
  const MasterEquation eq = build_model(s.model);
  const DensityMatrix rho = start_state(s, eq);
  IntegratorOptions opt = s.integrator_options();
  opt.window = 0.1;
  std::size_t steps = 0;
  for (auto _ : state) {
    const Trajectory tr = integrate_master(eq, rho, s.pulse, opt);
    steps += tr.steps() - 1;
    benchmark::DoNotOptimize(tr.final_state.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(steps));
}
BENCHMARK(BM_Rk4Steps)->Arg(0)->Arg(1);

void BM_Trajectory(benchmark::State& state) {
  const SimulationSetup s = setup_for(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(run_emission(s).probability.sigma_plus);
}
BENCHMARK(BM_Trajectory)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ExpmAction(benchmark::State& state) {
  const SimulationSetup s = setup_for(static_cast<int>(state.range(0)));
  const MasterEquation eq = build_model(s.model);
  const Liouvillian l = build_liouvillian(eq);
  const double dt = 1e-3;
  const SparseSuperoperator a = dt * (l.stationary + 0.5 * l.pump);
  const double bound = norm1(a);
  const DensityMatrix rho = start_state(s, eq);
  const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
  for (auto _ : state) benchmark::DoNotOptimize(expm_action(a, v, bound));
}
BENCHMARK(BM_ExpmAction)->Arg(0)->Arg(1);

void BM_CavityScanPoint(benchmark::State& state) {
  const SimulationSetup s = setup_for(0);
  for (auto _ : state) benchmark::DoNotOptimize(scan_cavity_detuning(s, {4.0}, 1).points.front().lambda_sigma_plus);
}
BENCHMARK(BM_CavityScanPoint)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace altpol

BENCHMARK_MAIN();
