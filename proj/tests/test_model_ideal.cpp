#include <gtest/gtest.h>

#include <random>

#include "altpol/model_ideal.hpp"
#include "test_support.hpp"

namespace altpol {
namespace {


IdealParams default_params() { return IdealParams{}; }

TEST(IdealHamiltonian, StaticCoefficients) {
  const IdealParams p = default_params();
  const HilbertSpace s = ideal_space();
  const OperatorMatrix h = build_h_stat_ideal(p, s);
  EXPECT_NEAR(h(s.index("minus", 0, 0), s.index("minus", 0, 0)).real(), kTwoPi * 45.0, 1e-12);
  EXPECT_NEAR(h(s.index("plus", 0, 0), s.index("plus", 0, 0)).real(), kTwoPi * 15.0, 1e-12);
  EXPECT_EQ(h(s.index("e", 0, 0), s.index("e", 0, 0)), Complex(0.0, 0.0));
  EXPECT_NEAR(h(s.index("minus", 1, 0), s.index("minus", 1, 0)).real(), kTwoPi * (30.0 + 15.0 - 30.0), 1e-12);
  EXPECT_EQ(max_abs(h - OperatorMatrix(h.diagonal().asDiagonal())), 0.0);
}

TEST(IdealHamiltonian, ZeroDetuningsGiveZero) {
  IdealParams p;
  p.delta_p = p.delta_cp = p.delta_b = Frequency{};
  EXPECT_EQ(max_abs(build_h_stat_ideal(p, ideal_space())), 0.0);
}

TEST(IdealHamiltonian, InteractionElements) {
  const IdealParams p = default_params();
  const HilbertSpace s = ideal_space();
  const OperatorMatrix h = build_h_int_ideal(p, p.omega_peak, s);
  const int e00 = s.index("e", 0, 0);
  EXPECT_NEAR(std::abs(h(e00, s.index("minus", 1, 0)) - Complex(-kTwoPi * 2.7, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(h(e00, s.index("plus", 0, 1)) - Complex(-kTwoPi * 2.7, 0.0)), 0.0, 1e-12);
  EXPECT_NEAR(h(e00, s.index("plus", 0, 0)).real(), -kTwoPi * 3.0, 1e-12);
  EXPECT_NEAR(h(e00, s.index("minus", 0, 0)).real(), -kTwoPi * 3.0, 1e-12);
  // sigma- photons do not couple |-> and vice versa.
  EXPECT_EQ(h(e00, s.index("minus", 0, 1)), Complex(0.0, 0.0));
  EXPECT_EQ(h(e00, s.index("plus", 1, 0)), Complex(0.0, 0.0));
  EXPECT_EQ(hermiticity_error(h), 0.0);

  IdealParams off = p;
  off.g = Frequency{};
  EXPECT_EQ(max_abs(build_h_int_ideal(off, Frequency{}, s)), 0.0);
}

TEST(IdealHamiltonian, HermitianAtEveryEnvelope) {
  const MasterEquation eq = build_ideal_model(default_params());
  for (double s : {0.0, 0.1, 0.5, 0.9, 1.0}) EXPECT_LT(hermiticity_error(eq.hamiltonian(s)), 1e-12);
}

TEST(IdealHamiltonian, ExcitationNumberConservedWithoutPump) {
  const HilbertSpace s = ideal_space();
  const OperatorMatrix n = transition(s, "e", "e") + number_operator(s, Slot::sigma_plus_mode) +
                           number_operator(s, Slot::sigma_minus_mode);
  const IdealParams p = default_params();
  const OperatorMatrix h = build_h_stat_ideal(p, s) + build_h_int_ideal(p, Frequency{}, s);
  EXPECT_EQ(max_abs(h * n - n * h), 0.0);
  // The classical pump adds excitations, so only the pump-free part commutes.
  const OperatorMatrix driven = build_h_stat_ideal(p, s) + build_h_int_ideal(p, p.omega_peak, s);
  EXPECT_GT(max_abs(driven * n - n * driven), 1.0);
}

TEST(IdealHamiltonian, MirrorMapsGeneratorOntoItself) {
  // M(X) = V X* V^dag with V swapping +/- and the two modes and flipping the
  // sign of |e>. Then M(L_A[rho]) = L_B[M(rho)] for the mirrored detunings.
  const HilbertSpace s = ideal_space();
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(12, 12);
  for (int k = 0; k < 12; ++k) {
    const auto b = s.state(k);
    const int level = b.level == 1 ? 1 : 2 - b.level;
    v(s.index(level, b.n_minus, b.n_plus), k) = b.level == 1 ? -1.0 : 1.0;
  }
  const auto mirror = [&](const OperatorMatrix& x) -> OperatorMatrix { return v * x.conjugate() * v.transpose(); };

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-40.0, 40.0);
  for (int draw = 0; draw < 20; ++draw) {
    IdealParams a = default_params();
    a.delta_p = Frequency::from_mhz(u(rng));
    a.delta_cp = Frequency::from_mhz(u(rng));
    IdealParams b = a;
    b.delta_p = -a.delta_p;
    b.delta_cp = -a.delta_cp;
    const MasterEquation ea = build_ideal_model(a);
    const MasterEquation eb = build_ideal_model(b);
    const DensityMatrix rho = support::random_density(12, rng);
    for (double env : {0.0, 0.3, 1.0})
      EXPECT_LT(max_abs(mirror(ea.rhs(env, rho)) - eb.rhs(env, mirror(rho))), 1e-10);
  }
}

TEST(CavityDissipator, Examples) {
  const HilbertSpace s = ideal_space();
  const Frequency kappa = Frequency::from_mhz(1.25);
  const Dissipator d = build_cavity_dissipator(kappa, s);
  const DensityMatrix one_photon = pure_state(s, "minus", 1, 0);
  const DensityMatrix l = d.apply(one_photon);
  const int vac = s.index("minus", 0, 0), one = s.index("minus", 1, 0);
  EXPECT_NEAR(l(vac, vac).real(), 2.0 * kappa.angular(), 1e-12);
  EXPECT_NEAR(l(one, one).real(), -2.0 * kappa.angular(), 1e-12);
  EXPECT_NEAR((l.array().abs2().sum() - 8.0 * kappa.angular() * kappa.angular()), 0.0, 1e-9);
  EXPECT_EQ(max_abs(d.apply(pure_state(s, "plus"))), 0.0);
}

TEST(CavityDissipator, TraceFree) {
  const Dissipator d = build_cavity_dissipator(Frequency::from_mhz(1.25), ideal_space());
  std::mt19937 rng(3);
  for (int draw = 0; draw < 100; ++draw) {
    const DensityMatrix rho = support::random_hermitian(12, rng);
    EXPECT_LT(std::abs(d.apply(rho).trace()), 1e-12);
  }
}

TEST(IdealParams, Validation) {
  IdealParams p;
  p.g = Frequency{};
  EXPECT_THROW(validate(p), std::invalid_argument);
  p = IdealParams{};
  p.kappa = Frequency::from_mhz(-1.0);
  EXPECT_THROW(validate(p), std::invalid_argument);
  p = IdealParams{};
  p.delta_b = Frequency::from_mhz(-1.0);
  EXPECT_THROW(validate(p), std::invalid_argument);
  EXPECT_NO_THROW(validate(IdealParams{}));
  EXPECT_NEAR(IdealParams{}.delta_ca().mhz(), 0.0, 1e-12);
}

TEST(Zeeman, TwentyOnePointFourGaussGivesFifteenMHz) {
  const double shift = ZeemanConfig{0.5, 21.4}.shift().mhz();
  EXPECT_NEAR(shift, 15.0, 0.005 * 15.0);
  EXPECT_NEAR((ZeemanConfig{-0.5, 21.4}.shift().mhz()), shift, 1e-12);
}

}  // namespace
}  // namespace altpol
