#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "altpol/model_ideal.hpp"
#include "altpol/model_rubidium.hpp"
#include "test_support.hpp"

namespace altpol {
namespace {

TEST(ClebschTable, PrintedValues) {
  EXPECT_NEAR(angular_factor(+1, 0, 0), 0.408248, 1e-6);
  EXPECT_NEAR(angular_factor(+1, 1, 0), -0.456435, 1e-6);
  EXPECT_EQ(angular_factor(+1, 1, -1), 0.0);
  EXPECT_EQ(angular_factor(0, 1, 0), 0.0);
  EXPECT_EQ(clebsch_table().size(), 9u);
  for (const auto& a : clebsch_table()) {
    EXPECT_EQ(a.pi_transition, a.excited_m == a.ground_m);
    const double mag = a.excited_f == 0 ? std::sqrt(1.0 / 6.0) : std::sqrt(5.0 / 24.0);
    EXPECT_DOUBLE_EQ(std::abs(a.value), mag);
  }
}

TEST(LevelScheme, HyperfineAndZeeman) {
  RubidiumParams p;
  p.delta_p = Frequency{};
  p.delta_b = Frequency{};
  const LevelScheme zero_field = build_level_scheme(p);
  ASSERT_EQ(zero_field.levels.size(), 7u);
  const Frequency e0 = zero_field.energy[static_cast<std::size_t>(zero_field.index_of(0, 0, true))];
  for (int m : {-1, 0, 1}) {
    const auto j = static_cast<std::size_t>(zero_field.index_of(1, m, true));
    EXPECT_NEAR((zero_field.energy[j] - e0).mhz(), 72.0, 1e-12);
  }

  p.delta_b = Frequency::from_mhz(15.0);
  const LevelScheme s = build_level_scheme(p);
  EXPECT_NEAR(s.energy[static_cast<std::size_t>(s.index_of(1, +1, false))].mhz(), -15.0, 1e-12);
  EXPECT_NEAR(s.energy[static_cast<std::size_t>(s.index_of(1, -1, false))].mhz(), 15.0, 1e-12);
  // g_F' m' mu_B B with mu_B B = delta_B / |g_F|.
  EXPECT_NEAR(s.energy[static_cast<std::size_t>(s.index_of(1, +1, true))].mhz(), 72.0 + 20.0, 1e-9);
  EXPECT_NEAR(s.energy[static_cast<std::size_t>(s.index_of(1, -1, true))].mhz(), 72.0 - 20.0, 1e-9);
}

TEST(RubidiumHamiltonian, StaticPart) {
  const HilbertSpace space = rubidium_space();
  RubidiumParams p;
  p.delta_p = p.delta_b = p.hyperfine_f0_f1 = Frequency{};
  EXPECT_EQ(max_abs(build_h_stat_full(build_level_scheme(p), Frequency{}, space)), 0.0);

  p = RubidiumParams{};
  const LevelScheme scheme = build_level_scheme(p);
  const OperatorMatrix h = build_h_stat_full(scheme, Frequency::from_mhz(30.0), space);
  for (const auto& label : space.levels()) {
    const double gap = h(space.index(label, 1, 0), space.index(label, 1, 0)).real() -
                       h(space.index(label, 0, 0), space.index(label, 0, 0)).real();
    EXPECT_NEAR(gap, kTwoPi * 30.0, 1e-9);
  }
  EXPECT_THROW(build_h_stat_full(scheme, Frequency{}, ideal_space()), std::invalid_argument);
}

TEST(RubidiumHamiltonian, CouplingElement) {
  const RubidiumParams p;
  const HilbertSpace space = rubidium_space();
  const MasterEquation eq = build_rubidium_model(p);
  const OperatorMatrix h = eq.hamiltonian(0.0);
  const int e = space.index("e0_0", 0, 0);
  // m=+1 -> m'=0 lowers m: a sigma- photon is absorbed, mode b.
  EXPECT_NEAR(h(e, space.index("g_p1", 0, 1)).real(), -kTwoPi * std::sqrt(1.0 / 6.0) * 6.7, 1e-12);
  EXPECT_NEAR(-h(e, space.index("g_p1", 0, 1)).real() / kTwoPi, 2.7352, 1e-4);
  EXPECT_EQ(h(e, space.index("g_p1", 1, 0)), Complex(0.0, 0.0));
  EXPECT_NEAR(h(e, space.index("g_m1", 1, 0)).real(), -kTwoPi * std::sqrt(1.0 / 6.0) * 6.7, 1e-12);
}

TEST(RubidiumHamiltonian, PumpTermsVanishWhenOff) {
  const CouplingTable table = build_coupling_table(build_level_scheme({}), Frequency::from_mhz(6.7),
                                                   Frequency::from_mhz(14.7));
  const HilbertSpace space = rubidium_space();
  const OperatorMatrix off = build_h_int_full(table, 0.0, space);
  // With the pump off, every nonzero element changes the photon number.
  for (int r = 0; r < space.total_dim(); ++r)
    for (int c = 0; c < space.total_dim(); ++c)
      if (off(r, c) != Complex(0.0, 0.0)) {
        const auto a = space.state(r), b = space.state(c);
        EXPECT_EQ(std::abs(a.n_plus + a.n_minus - b.n_plus - b.n_minus), 1);
      }
  const OperatorMatrix on = build_h_int_full(table, 1.0, space);
  EXPECT_GT(max_abs(on - off), 0.0);
  EXPECT_LT(hermiticity_error(on), 1e-12);
}

TEST(RubidiumHamiltonian, SelectionRules) {
  const RubidiumParams p;
  const LevelScheme scheme = build_level_scheme(p);
  const CouplingTable table = build_coupling_table(scheme, p.g0, p.omega0);
  for (const auto& c : table.entries) {
    const int dm = scheme.levels[static_cast<std::size_t>(c.excited)].m - scheme.levels[static_cast<std::size_t>(c.ground)].m;
    if (dm != +1) EXPECT_EQ(c.g_plus.angular(), 0.0);
    if (dm != -1) EXPECT_EQ(c.g_minus.angular(), 0.0);
    if (dm == 0) EXPECT_EQ(c.omega.angular(), 0.0);
    if (dm == +1) EXPECT_EQ(c.g_plus, p.g0 * c.angular);
  }

  const HilbertSpace space = rubidium_space();
  const OperatorMatrix h = build_h_int_full(table, 1.0, space);
  for (int r = 0; r < space.total_dim(); ++r)
    for (int c = 0; c < space.total_dim(); ++c) {
      if (h(r, c) == Complex(0.0, 0.0)) continue;
      const auto a = space.state(r), b = space.state(c);
      const auto& la = scheme.levels[static_cast<std::size_t>(a.level)];
      const auto& lb = scheme.levels[static_cast<std::size_t>(b.level)];
      ASSERT_NE(la.excited, lb.excited);
      const auto& ex = la.excited ? la : lb;
      const auto& gr = la.excited ? lb : la;
      const auto& photons_ex = la.excited ? a : b;
      const auto& photons_gr = la.excited ? b : a;
      const int dm = ex.m - gr.m;
      ASSERT_EQ(std::abs(dm), 1);
      const int d_plus = photons_gr.n_plus - photons_ex.n_plus;
      const int d_minus = photons_gr.n_minus - photons_ex.n_minus;
      if (d_plus != 0 || d_minus != 0) {
        // excited -> ground emits into the mode fixed by delta m.
        EXPECT_EQ(d_plus, dm == +1 ? 1 : 0);
        EXPECT_EQ(d_minus, dm == -1 ? 1 : 0);
      }
    }
}

TEST(DecayConfig, Branching) {
  const RubidiumParams p;
  const LevelScheme scheme = build_level_scheme(p);
  const DecayConfig d = build_decay_config(scheme, p.gamma_total, M0Mode::sink);
  EXPECT_NO_THROW(validate(d));
  const int e0 = scheme.index_of(0, 0, true);
  const int e1_0 = scheme.index_of(1, 0, true);
  // F'=0 decays only to F=1 (1/3 each); m=0 is a sink channel here.
  EXPECT_NEAR(d.sink_rate(e0).mhz(), 1.0, 1e-12);
  // F'=1, m'=0 reaches m=+-1 with 5/24 each out of 1/2; the rest goes to F=2.
  EXPECT_NEAR(d.sink_rate(e1_0).mhz(), 3.0 * (1.0 - 2.0 * (5.0 / 24.0) / 0.5), 1e-12);
  const DecayConfig coherent = build_decay_config(scheme, p.gamma_total, M0Mode::coherent);
  EXPECT_NEAR(coherent.sink_rate(e0).mhz(), 0.0, 1e-12);
  for (const auto& c : d.channels) EXPECT_GE(c.rate.angular(), 0.0);

  DecayConfig broken = d;
  broken.channels.front().rate = Frequency::from_mhz(-1.0);
  EXPECT_THROW(validate(broken), std::invalid_argument);
  DecayConfig over = coherent;
  for (auto& c : over.channels) c.rate = c.rate * 3.0;
  EXPECT_THROW(validate(over), std::invalid_argument);
}

TEST(FullDissipator, PureExcitedTraceLoss) {
  const RubidiumParams p;
  const MasterEquation eq = build_rubidium_model(p);
  const LevelScheme scheme = build_level_scheme(p);
  const DecayConfig decay = build_decay_config(scheme, p.gamma_total, p.m0_mode);
  for (const char* label : {"e0_0", "e1_m1", "e1_0", "e1_p1"}) {
    const DensityMatrix rho = pure_state(eq.space, label);
    const double rate = eq.dissipator.apply(rho).trace().real();
    EXPECT_NEAR(rate, -2.0 * decay.sink_rate(eq.space.level_index(label)).angular(), 1e-12) << label;
  }
}

TEST(FullDissipator, TraceLossMatchesSinkWeights) {
  const RubidiumParams p;
  std::mt19937 rng(5);
  for (M0Mode mode : {M0Mode::sink, M0Mode::coherent}) {
    RubidiumParams q = p;
    q.m0_mode = mode;
    const MasterEquation eq = build_rubidium_model(q);
    const DecayConfig decay = build_decay_config(build_level_scheme(q), q.gamma_total, mode);
    for (int draw = 0; draw < 50; ++draw) {
      const DensityMatrix rho = support::random_density(28, rng);
      double expected = 0.0;
      for (int j = 3; j < 7; ++j) {
        const double pop = expectation(rho, transition(eq.space, j, j)).real();
        expected -= 2.0 * decay.sink_rate(j).angular() * pop;
      }
      EXPECT_NEAR(eq.dissipator.apply(rho).trace().real(), expected, 1e-12);
    }
  }
}

TEST(FullDissipator, ZeroGammaReducesToCavity) {
  RubidiumParams p;
  p.gamma_total = Frequency{};
  const MasterEquation eq = build_rubidium_model(p);
  const Dissipator cavity = build_cavity_dissipator(p.kappa, eq.space);
  std::mt19937 rng(9);
  for (int draw = 0; draw < 10; ++draw) {
    const DensityMatrix rho = support::random_density(28, rng);
    EXPECT_EQ(max_abs(eq.dissipator.apply(rho) - cavity.apply(rho)), 0.0);
  }
}

TEST(FullDissipator, ClosedWhenNothingIsSunk) {
  // Coherent m=0 handling and support outside F'=1: no F=2 decay, so no trace loss.
  RubidiumParams p;
  p.m0_mode = M0Mode::coherent;
  const MasterEquation eq = build_rubidium_model(p);
  std::mt19937 rng(13);
  for (int draw = 0; draw < 100; ++draw) {
    DensityMatrix rho = support::random_density(28, rng);
    for (int k = 0; k < 28; ++k)
      if (eq.space.state(k).level >= 4) {
        rho.row(k).setZero();
        rho.col(k).setZero();
      }
    EXPECT_LT(std::abs(eq.dissipator.apply(rho).trace()), 1e-12);
  }
}

TEST(RubidiumParams, Validation) {
  RubidiumParams p;
  p.gamma_total = Frequency::from_mhz(-1.0);
  EXPECT_THROW(validate(p), std::invalid_argument);
  p = RubidiumParams{};
  p.g0 = Frequency{};
  EXPECT_THROW(build_rubidium_model(p), std::invalid_argument);
  EXPECT_NO_THROW(build_rubidium_model(RubidiumParams{}));
}

}  // namespace
}  // namespace altpol
