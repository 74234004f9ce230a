#pragma once

// Dimensionless single-electron photon-absorption kinematics.
//
// Units: m = c = 1. The only physics parameter is the photon energy in units
// of the rest energy, epsilon = hbar*omega0 / (m c^2). After n absorptions
// the interaction energy is E_n = epsilon * S_n = u_n^2, where the dilation
// sum S_n accumulates one sqrt(1 - u_i^2) per absorbed quantum.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "photon_kick/compensated_sum.hpp"

namespace photon_kick {

/// How the leading "1 +" of the dilation bracket is read.
///
/// Literal keeps the bracket as written, so the first absorption already
/// contributes two quanta (S_1 = 2). FirstKickUndilated drops the duplicated
/// term so that S_1 = 1 and E_1 = epsilon. Both share the same fixed point.
enum class Convention { Literal, FirstKickUndilated };

const char* to_string(Convention convention);
std::optional<Convention> convention_from_string(std::string_view text);

/// Radicand values in [-kRadicandSlack, 0) are clamped to zero.
inline constexpr double kRadicandSlack = 1e-12;

/// Increments below this are treated as noise when forming alpha.
double degenerate_increment_floor();

/// Default Fig. 2 style sampling grid: 0.05, 0.10, ..., 0.95, 0.99.
std::vector<double> default_velocity_targets();

struct SimulationConfig {
  double epsilon = 4e-6;
  Convention convention = Convention::FirstKickUndilated;
  double step_tolerance = 1e-6;
  std::uint64_t max_steps = 10'000'000;
  std::uint64_t sample_stride = 1000;
  std::vector<double> velocity_targets;

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

struct ParticleState {
  std::uint64_t n = 0;
  CompensatedSum dilation;
  double u = 0.0;
  double interaction_energy = 0.0;

  double dilation_sum() const { return dilation.value(); }

  friend bool operator==(const ParticleState&, const ParticleState&) = default;
};

/// One recorded sample of the interaction model next to the STR model.
struct ComparisonRow {
  std::uint64_t n = 0;
  double u_r = 0.0;
  double u_c = 0.0;
  double energy_interaction = 1.0;
  double energy_str = 1.0;
  std::optional<double> alpha;
  double gamma = 1.0;
  bool degenerate = false;

  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

/// Electron at rest before any absorption.
ParticleState initial_state(Convention convention);

/// sqrt(1 - u^2), the dilated fraction of the next quantum. Throws
/// DomainError when the radicand is below -kRadicandSlack.
double dilation_increment(double u);

/// Absorbs one quantum. Returns nullopt when the kick would carry the
/// velocity to or past c (the discrete fixed point has been reached).
std::optional<ParticleState> advance(const ParticleState& state, double epsilon);

/// Checked single absorption. Throws CapReached at max_steps and DomainError
/// on a corrupt state or a kick that would reach c.
ParticleState step(const ParticleState& state, const SimulationConfig& config);

/// Classical velocity sqrt(n * epsilon): every quantum fully absorbed.
double classical_velocity(std::uint64_t n, double epsilon);

/// sqrt(epsilon) * (sqrt(n) - sqrt(n - 1)), n >= 1.
double delta_u_classical(std::uint64_t n, double epsilon);

/// u_n - u_prev. Throws NonMonotone if negative.
double delta_u_relativistic(double u_n, double u_prev);

double lorentz_gamma(double u);

/// Total STR energy gamma(u) in units of m c^2.
double str_energy(double u);

/// Rest energy plus half the interaction-model total: 1 + u^2 / 2.
double interaction_energy_plot(double u);

bool is_degenerate_step(double u_n, double u_prev);

/// Virtual inertia factor
///   alpha = (du_classical / du_relativistic) * (u_classical / u_relativistic).
/// Throws DegenerateStep when u_n - u_prev is below the noise floor.
double alpha(std::uint64_t n, double u_n, double u_prev, double epsilon);

/// Builds the comparison record for step n from the consecutive pair.
ComparisonRow make_row(std::uint64_t n, double u_n, double u_prev, double epsilon);

}  // namespace photon_kick
