#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "photon_kick/compensated_sum.hpp"
#include "photon_kick/errors.hpp"
#include "photon_kick/kinematics.hpp"

using namespace photon_kick;

namespace {

constexpr double kEps = 4e-6;

SimulationConfig config_for(double epsilon, Convention convention) {
  SimulationConfig config;
  config.epsilon = epsilon;
  config.convention = convention;
  return config;
}

}  // namespace

TEST(Step, LiteralFirstKickCarriesTwoQuanta) {
  const auto config = config_for(kEps, Convention::Literal);
  const auto state = step(initial_state(Convention::Literal), config);
  EXPECT_EQ(state.n, 1u);
  EXPECT_DOUBLE_EQ(state.dilation_sum(), 2.0);
  // sqrt(2 * 4e-6)
  EXPECT_NEAR(state.u, 2.8284271247461903e-3, 1e-18);
}

TEST(Step, FirstKickUndilatedCarriesOneQuantum) {
  const auto config = config_for(kEps, Convention::FirstKickUndilated);
  const auto state = step(initial_state(Convention::FirstKickUndilated), config);
  EXPECT_DOUBLE_EQ(state.dilation_sum(), 1.0);
  EXPECT_NEAR(state.u, 2.0e-3, 1e-18);
  EXPECT_DOUBLE_EQ(state.interaction_energy, kEps);
}

TEST(Step, SecondKickIsDilated) {
  const auto config = config_for(0.25, Convention::FirstKickUndilated);
  auto state = step(initial_state(config.convention), config);
  state = step(state, config);
  const double expected_sum = 1.0 + std::sqrt(1.0 - 0.25);
  EXPECT_DOUBLE_EQ(state.dilation_sum(), expected_sum);
  EXPECT_DOUBLE_EQ(state.u, std::sqrt(0.25 * expected_sum));
}

TEST(Step, IncrementAtToleranceBoundary) {
  const double tolerance = 1e-6;
  const double u = std::sqrt(1.0 - tolerance * tolerance);
  EXPECT_NEAR(dilation_increment(u), tolerance, 1e-9 * tolerance + 1e-10);
}

TEST(Step, RadicandWithinSlackClampsToZero) {
  EXPECT_EQ(dilation_increment(1.0), 0.0);
  EXPECT_EQ(dilation_increment(1.0 + 1e-13), 0.0);
  EXPECT_THROW(dilation_increment(1.0 + 1e-9), DomainError);
}

TEST(Step, CapReached) {
  auto config = config_for(kEps, Convention::FirstKickUndilated);
  config.max_steps = 2;
  auto state = step(initial_state(config.convention), config);
  state = step(state, config);
  EXPECT_THROW(step(state, config), CapReached);
}

TEST(Step, CorruptStateIsDomainError) {
  const auto config = config_for(kEps, Convention::FirstKickUndilated);
  ParticleState state;
  state.n = 3;
  state.u = 1.5;
  EXPECT_THROW(step(state, config), DomainError);

  ParticleState overfull;
  overfull.n = 3;
  overfull.dilation = CompensatedSum(2.0 / kEps);
  EXPECT_THROW(step(overfull, config), DomainError);
}

TEST(Step, KickPastLightSpeedIsRejected) {
  // At epsilon = 0.25 the seventh kick would push u^2 to 1.0156.
  const auto config = config_for(0.25, Convention::FirstKickUndilated);
  auto state = initial_state(config.convention);
  for (int i = 0; i < 6; ++i) state = step(state, config);
  EXPECT_LT(state.u, 1.0);
  EXPECT_FALSE(advance(state, config.epsilon).has_value());
  EXPECT_THROW(step(state, config), DomainError);
}

TEST(ClassicalVelocity, Examples) {
  EXPECT_EQ(classical_velocity(0, kEps), 0.0);
  EXPECT_NEAR(classical_velocity(1, kEps), 2e-3, 1e-18);
  EXPECT_NEAR(classical_velocity(250000, kEps), 1.0, 1e-15);
}

TEST(DeltaUClassical, Examples) {
  EXPECT_NEAR(delta_u_classical(1, kEps), 2e-3, 1e-18);
  EXPECT_NEAR(delta_u_classical(4, 1.0), 2.0 - std::sqrt(3.0), 1e-15);
}

TEST(DeltaUClassical, LargeNMatchesSeries) {
  const std::uint64_t n = 1'000'000;
  const double series = std::sqrt(kEps) / (2.0 * std::sqrt(static_cast<double>(n)));
  const long double direct =
      std::sqrt(static_cast<long double>(kEps)) *
      (std::sqrt(static_cast<long double>(n)) - std::sqrt(static_cast<long double>(n - 1)));
  const double value = delta_u_classical(n, kEps);
  // Next series term is relative 1/(4n).
  EXPECT_NEAR(value / series, 1.0, 3e-7);
  EXPECT_NEAR(value / static_cast<double>(direct), 1.0, 1e-9);
}

TEST(DeltaURelativistic, Examples) {
  EXPECT_NEAR(delta_u_relativistic(std::sqrt(2 * kEps), 0.0), 2.8284271247461903e-3, 1e-18);
  EXPECT_EQ(delta_u_relativistic(0.3, 0.3), 0.0);
  EXPECT_THROW(delta_u_relativistic(0.3, 0.31), NonMonotone);
}

TEST(DeltaURelativistic, IncrementNearConvergenceIsTiny) {
  // u close to 1: the next kick moves u by about eps * sqrt(1 - u^2) / 2.
  const double u = 1.0 - 1e-8;
  ParticleState state;
  state.n = 10;
  state.u = u;
  state.dilation = CompensatedSum(u * u / kEps);
  const auto next = advance(state, kEps);
  ASSERT_TRUE(next.has_value());
  EXPECT_LT(delta_u_relativistic(next->u, u), 1e-6);
}

TEST(LorentzGamma, PythagoreanTriples) {
  EXPECT_EQ(lorentz_gamma(0.0), 1.0);
  EXPECT_DOUBLE_EQ(lorentz_gamma(0.6), 1.25);
  EXPECT_DOUBLE_EQ(lorentz_gamma(0.8), 5.0 / 3.0);
  EXPECT_THROW(lorentz_gamma(1.0), DomainError);
  EXPECT_THROW(str_energy(1.2), DomainError);
}

TEST(StrEnergy, Examples) {
  EXPECT_EQ(str_energy(0.0), 1.0);
  EXPECT_NEAR(str_energy(0.1), 1.0050378152592121, 1e-15);
  EXPECT_LT(std::abs(str_energy(0.1) - (1.0 + 0.5 * 0.01)), 4e-5);
  EXPECT_NEAR(str_energy(0.99), 7.0888120500833, 1e-12);
}

TEST(InteractionEnergyPlot, Examples) {
  EXPECT_EQ(interaction_energy_plot(0.0), 1.0);
  EXPECT_DOUBLE_EQ(interaction_energy_plot(0.6), 1.18);
  EXPECT_NEAR(interaction_energy_plot(std::nextafter(1.0, 0.0)), 1.5, 1e-15);
}

TEST(Alpha, FirstUndilatedKickIsUnity) {
  const double u1 = std::sqrt(kEps);
  EXPECT_DOUBLE_EQ(alpha(1, u1, 0.0, kEps), 1.0);
}

TEST(Alpha, TracksGammaAlongTrajectory) {
  const auto config = config_for(kEps, Convention::FirstKickUndilated);
  auto state = initial_state(config.convention);
  double previous = 0.0;
  bool checked_half = false;
  while (state.u < 0.99) {
    previous = state.u;
    state = step(state, config);
    if (!checked_half && state.u >= 0.5) {
      EXPECT_NEAR(alpha(state.n, state.u, previous, kEps), lorentz_gamma(state.u), 1e-4);
      checked_half = true;
    }
  }
  EXPECT_TRUE(checked_half);
  EXPECT_NEAR(alpha(state.n, state.u, previous, kEps), lorentz_gamma(state.u), 1e-3);
}

TEST(Alpha, DegenerateIncrement) {
  EXPECT_TRUE(is_degenerate_step(0.5 + 1e-14, 0.5));
  EXPECT_FALSE(is_degenerate_step(0.5 + 1e-9, 0.5));
  EXPECT_THROW(alpha(10, 0.5 + 1e-14, 0.5, kEps), DegenerateStep);
  EXPECT_THROW(alpha(10, 0.4, 0.5, kEps), NonMonotone);

  const auto row = make_row(10, 0.5 + 1e-14, 0.5, kEps);
  EXPECT_TRUE(row.degenerate);
  EXPECT_FALSE(row.alpha.has_value());
}

TEST(MakeRow, AtRestHasNoAlpha) {
  const auto row = make_row(0, 0.0, 0.0, kEps);
  EXPECT_FALSE(row.alpha.has_value());
  EXPECT_FALSE(row.degenerate);
  EXPECT_EQ(row.gamma, 1.0);
  EXPECT_EQ(row.energy_str, 1.0);
  EXPECT_EQ(row.energy_interaction, 1.0);
}

TEST(SimulationConfig, Validation) {
  SimulationConfig config;
  EXPECT_NO_THROW(config.validate());

  auto broken = config;
  broken.epsilon = 0.0;
  EXPECT_THROW(broken.validate(), ConfigError);
  broken.epsilon = 1.0;
  EXPECT_THROW(broken.validate(), ConfigError);
  broken.epsilon = std::nan("");
  EXPECT_THROW(broken.validate(), ConfigError);

  broken = config;
  broken.step_tolerance = 1.0;
  EXPECT_THROW(broken.validate(), ConfigError);
  broken = config;
  broken.max_steps = 0;
  EXPECT_THROW(broken.validate(), ConfigError);
  broken = config;
  broken.sample_stride = 0;
  EXPECT_THROW(broken.validate(), ConfigError);
  broken = config;
  broken.velocity_targets = {0.2, 0.2};
  EXPECT_THROW(broken.validate(), ConfigError);
  broken.velocity_targets = {0.2, 1.0};
  EXPECT_THROW(broken.validate(), ConfigError);
}

TEST(Convention, StringRoundTrip) {
  for (auto convention : {Convention::Literal, Convention::FirstKickUndilated}) {
    EXPECT_EQ(convention_from_string(to_string(convention)), convention);
  }
  EXPECT_FALSE(convention_from_string("Literal").has_value());
}

TEST(CompensatedSum, RecoversLostBits) {
  // 1 + 1e6 * 1e-16: naive addition drops every term.
  CompensatedSum sum(1.0);
  double naive = 1.0;
  for (int i = 0; i < 1'000'000; ++i) {
    sum.add(1e-16);
    naive += 1e-16;
  }
  EXPECT_EQ(naive, 1.0);
  EXPECT_NEAR(sum.value(), 1.0 + 1e-10, 1e-22);
}
