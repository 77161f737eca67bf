#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "altpol/evolution.hpp"
#include "altpol/model_ideal.hpp"
#include "altpol/model_rubidium.hpp"
#include "test_support.hpp"

namespace altpol {
namespace {

/// Resonantly driven two-level atom, H = -(Omega/2)(|e><g| + |g><e|), nothing else.
MasterEquation two_level(Frequency omega) {
  HilbertSpace space({"g", "e"}, 1);
  const int dim = space.total_dim();
  const OperatorMatrix zero = OperatorMatrix::Zero(dim, dim);
  const OperatorMatrix flip = transition(space, "e", "g") + transition(space, "g", "e");
  return MasterEquation{space, zero, zero, -0.5 * omega.angular() * flip, Dissipator(dim), Frequency{}};
}

/// Empty Hamiltonian, cavity leakage only.
MasterEquation leaky_cavity(Frequency kappa) {
  HilbertSpace space = ideal_space();
  const int dim = space.total_dim();
  const OperatorMatrix zero = OperatorMatrix::Zero(dim, dim);
  Dissipator d = build_cavity_dissipator(kappa, space);
  return MasterEquation{space, zero, zero, zero, std::move(d), kappa};
}

TEST(Integrator, RabiClosedForm) {
  const Frequency omega = Frequency::from_mhz(6.0);
  const MasterEquation eq = two_level(omega);
  IntegratorOptions opt;
  opt.window = 1.5;
  const Trajectory tr = integrate_master(eq, pure_state(eq.space, "g"), PulseShape::constant(1.5), opt);
  ASSERT_EQ(tr.steps(), 1501u);
  double worst = 0.0;
  for (std::size_t k = 0; k < tr.steps(); ++k) {
    const double s = std::sin(0.5 * omega.angular() * tr.time[k]);
    worst = std::max(worst, std::abs(tr.population(k, "e") - s * s));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Integrator, EmptyCavityDecay) {
  const Frequency kappa = Frequency::from_mhz(1.25);
  const MasterEquation eq = leaky_cavity(kappa);
  IntegratorOptions opt;
  opt.window = 2.0;
  const Trajectory tr = integrate_master(eq, pure_state(eq.space, "minus", 1, 0), PulseShape::sin_squared(1.5), opt);
  double worst_n = 0.0, worst_leak = 0.0;
  for (std::size_t k = 0; k < tr.steps(); ++k) {
    const double survive = std::exp(-2.0 * kappa.angular() * tr.time[k]);
    worst_n = std::max(worst_n, std::abs(tr.n_plus[k] - survive));
    worst_leak = std::max(worst_leak, std::abs(tr.leaked_plus[k] - (1.0 - survive)));
    EXPECT_EQ(tr.n_minus[k], 0.0);
  }
  EXPECT_LT(worst_n, 1e-8);
  EXPECT_LT(worst_leak, 1e-8);
}

TEST(Integrator, NoPumpKeepsGroundStateFixed) {
  MasterEquation eq = build_ideal_model(IdealParams{});
  eq.h_pump.setZero();
  const Trajectory tr = integrate_master(eq, pure_state(eq.space, "plus"), PulseShape::sin_squared(1.5));
  for (std::size_t k = 0; k < tr.steps(); k += 97) {
    EXPECT_EQ(tr.population(k, "plus"), 1.0);
    EXPECT_EQ(tr.n_plus[k] + tr.n_minus[k], 0.0);
  }
  EXPECT_EQ(tr.final_state, pure_state(eq.space, "plus"));
}

TEST(Integrator, InvariantsWithoutSinks) {
  const MasterEquation eq = build_ideal_model(IdealParams{});
  const Trajectory tr = integrate_master(eq, pure_state(eq.space, "plus"), PulseShape::sin_squared(1.5));
  for (double tr_k : tr.trace) EXPECT_LT(std::abs(tr_k - 1.0), 1e-8);
  for (const auto& s : tr.snapshots) {
    const PhysicalityReport r = inspect_density(s.rho);
    EXPECT_LT(r.hermiticity_error, 1e-9);
    EXPECT_GT(r.min_eigenvalue, -1e-7);
  }
}

TEST(Integrator, StoragePolicy) {
  const MasterEquation eq = build_ideal_model(IdealParams{});
  IntegratorOptions opt;
  opt.window = 0.105;
  opt.store_every = 10;
  const Trajectory tr = integrate_master(eq, pure_state(eq.space, "plus"), PulseShape::sin_squared(1.5), opt);
  ASSERT_EQ(tr.steps(), 106u);
  ASSERT_EQ(tr.snapshots.size(), 12u);
  EXPECT_EQ(tr.snapshots[3].step, 30u);
  EXPECT_EQ(tr.snapshots.back().step, 105u);
  EXPECT_EQ(tr.snapshots.back().rho, tr.final_state);
  EXPECT_EQ(tr.populations.rows(), 106);
}

TEST(Integrator, DefaultWindowCoversTail) {
  const Frequency kappa = Frequency::from_mhz(1.25);
  EXPECT_NEAR(default_tail(kappa), 5.0 / (2.0 * kappa.angular()), 1e-15);
  EXPECT_NEAR(default_window(PulseShape::sin_squared(1.5), kappa), 1.5 + default_tail(kappa), 1e-15);
}

TEST(Integrator, Errors) {
  const MasterEquation eq = build_ideal_model(IdealParams{});
  const DensityMatrix rho = pure_state(eq.space, "plus");
  const PulseShape p = PulseShape::sin_squared(1.5);
  IntegratorOptions opt;
  opt.dt = 2e-3;
  EXPECT_THROW(integrate_master(eq, rho, p, opt), std::invalid_argument);
  opt.dt = 0.0;
  EXPECT_THROW(integrate_master(eq, rho, p, opt), std::invalid_argument);
  EXPECT_THROW(integrate_master(eq, DensityMatrix::Identity(3, 3), p), std::invalid_argument);

  // A step far outside the stability region must abort rather than return garbage.
  const MasterEquation rb = build_rubidium_model(RubidiumParams{});
  opt.dt = opt.dt_max = 0.05;
  EXPECT_THROW(integrate_master(rb, pure_state(rb.space, "g_p1"), p, opt), IntegrationError);
}

TEST(Integrator, Deterministic) {
  const MasterEquation eq = build_rubidium_model(RubidiumParams{});
  const DensityMatrix rho = pure_state(eq.space, "g_p1");
  IntegratorOptions opt;
  opt.window = 0.5;
  const Trajectory a = integrate_master(eq, rho, PulseShape::sin_squared(1.5), opt);
  const Trajectory b = integrate_master(eq, rho, PulseShape::sin_squared(1.5), opt);
  EXPECT_EQ(a.final_state, b.final_state);
  EXPECT_EQ(a.leaked_plus, b.leaked_plus);
  EXPECT_EQ(a.sink_loss, b.sink_loss);
}

TEST(Oracle, LiouvillianMatchesDenseRhs) {
  const MasterEquation eq = build_rubidium_model(RubidiumParams{});
  const Liouvillian l = build_liouvillian(eq);
  std::mt19937 rng(29);
  for (double env : {0.0, 0.4, 1.0}) {
    const DensityMatrix rho = support::random_density(28, rng);
    const Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
    const Eigen::VectorXcd lv = l.stationary * v + env * (l.pump * v);
    const DensityMatrix expected = eq.rhs(env, rho);
    EXPECT_LT((lv - Eigen::Map<const Eigen::VectorXcd>(expected.data(), expected.size())).cwiseAbs().maxCoeff(),
              1e-9);
  }
}

TEST(Oracle, ExpmActionMatchesDenseExponential) {
  std::mt19937 rng(31);
  for (double scale : {0.1, 3.0, 40.0}) {
    const OperatorMatrix a = scale * support::random_matrix(12, rng) / 12.0;
    const SparseSuperoperator s = to_sparse(a);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(12);
    v(0) = 1.0;
    v(5) = Complex(0.0, 2.0);
    const Eigen::VectorXcd expected = a.exp() * v;
    const Eigen::VectorXcd got = expm_action(s, v, norm1(s));
    EXPECT_LT((got - expected).norm() / expected.norm(), 1e-12) << scale;
  }
}

TEST(Oracle, ExponentialDecay) {
  const Frequency kappa = Frequency::from_mhz(1.25);
  const MasterEquation eq = leaky_cavity(kappa);
  const DensityMatrix rho0 = pure_state(eq.space, "minus", 1, 0);
  for (double t : {0.1, 0.5, 1.7}) {
    OracleOptions opt;
    opt.n_slices = 10;
    const DensityMatrix rho = propagator_oracle(eq, rho0, PulseShape::sin_squared(1.5), t, opt);
    const double n = expectation(rho, number_operator(eq.space, Slot::sigma_plus_mode)).real();
    EXPECT_NEAR(n, std::exp(-2.0 * kappa.angular() * t), 1e-12);
  }
}

TEST(Oracle, EdgeCases) {
  const MasterEquation eq = build_ideal_model(IdealParams{});
  const DensityMatrix rho0 = pure_state(eq.space, "plus");
  EXPECT_EQ(propagator_oracle(eq, rho0, PulseShape::sin_squared(1.5), 0.0), rho0);
  OracleOptions few;
  few.n_slices = 9;
  EXPECT_THROW(propagator_oracle(eq, rho0, PulseShape::sin_squared(1.5), 1.0, few), std::invalid_argument);
  OracleOptions small;
  small.max_superoperator_dim = 100;
  EXPECT_THROW(propagator_oracle(eq, rho0, PulseShape::sin_squared(1.5), 1.0, small), std::length_error);
}

TEST(Oracle, AgreesWithStepperOnIdealModel) {
  const MasterEquation eq = build_ideal_model(IdealParams{});
  const DensityMatrix rho0 = pure_state(eq.space, "plus");
  const PulseShape p = PulseShape::sin_squared(1.5);
  IntegratorOptions opt;
  opt.dt = 5e-4;
  opt.window = 1.8;
  const Trajectory tr = integrate_master(eq, rho0, p, opt);
  OracleOptions oo;
  oo.n_slices = 1800;
  const DensityMatrix ref = propagator_oracle(eq, rho0, p, 1.8, oo);
  EXPECT_LT(max_abs(tr.final_state - ref), 1e-8);

  // The second-order midpoint scheme is also a consistent reference, only coarser.
  oo.scheme = OracleScheme::midpoint;
  EXPECT_LT(max_abs(propagator_oracle(eq, rho0, p, 1.8, oo) - ref), 1e-4);
}

}  // namespace
}  // namespace altpol
