#include "photon_kick/kinematics.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "photon_kick/errors.hpp"

namespace photon_kick {

const char* to_string(Convention convention) {
  switch (convention) {
    case Convention::Literal:
      return "literal";
    case Convention::FirstKickUndilated:
      return "first-kick-undilated";
  }
  return "unknown";
}

std::optional<Convention> convention_from_string(std::string_view text) {
  if (text == "literal") return Convention::Literal;
  if (text == "first-kick-undilated") return Convention::FirstKickUndilated;
  return std::nullopt;
}

double degenerate_increment_floor() {
  return 1e3 * std::numeric_limits<double>::epsilon();
}

std::vector<double> default_velocity_targets() {
  std::vector<double> targets;
  for (int k = 1; k <= 19; ++k) targets.push_back(0.05 * k);
  targets.push_back(0.99);
  return targets;
}

void SimulationConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw ConfigError("epsilon must lie in (0, 1), got " + std::to_string(epsilon));
  }
  if (!(step_tolerance > 0.0 && step_tolerance < 1.0)) {
    throw ConfigError("step tolerance must lie in (0, 1), got " +
                      std::to_string(step_tolerance));
  }
  if (max_steps < 1) throw ConfigError("max_steps must be at least 1");
  if (sample_stride < 1) throw ConfigError("sample_stride must be at least 1");
  double previous = 0.0;
  for (double target : velocity_targets) {
    if (!(target > 0.0 && target < 1.0)) {
      throw ConfigError("velocity target outside (0, 1): " + std::to_string(target));
    }
    if (!(target > previous)) {
      throw ConfigError("velocity targets must be strictly increasing");
    }
    previous = target;
  }
}

ParticleState initial_state(Convention convention) {
  ParticleState state;
  if (convention == Convention::Literal) state.dilation = CompensatedSum(1.0);
  return state;
}

double dilation_increment(double u) {
  double radicand = 1.0 - u * u;
  if (radicand < 0.0) {
    if (radicand < -kRadicandSlack) {
      throw DomainError("velocity at or beyond c: 1 - u^2 = " + std::to_string(radicand));
    }
    radicand = 0.0;
  }
  return std::sqrt(radicand);
}

std::optional<ParticleState> advance(const ParticleState& state, double epsilon) {
  ParticleState next = state;
  next.n += 1;
  next.dilation.add(dilation_increment(state.u));
  const double energy = epsilon * next.dilation_sum();
  if (!(energy < 1.0)) return std::nullopt;
  next.u = std::sqrt(energy);
  if (!(next.u < 1.0)) return std::nullopt;
  next.interaction_energy = energy;
  return next;
}

ParticleState step(const ParticleState& state, const SimulationConfig& config) {
  if (state.n >= config.max_steps) {
    throw CapReached("step cap of " + std::to_string(config.max_steps) + " reached");
  }
  if (1.0 - config.epsilon * state.dilation_sum() < -kRadicandSlack) {
    throw DomainError("dilation sum exceeds 1/epsilon");
  }
  auto next = advance(state, config.epsilon);
  if (!next) {
    throw DomainError("absorption at step " + std::to_string(state.n + 1) +
                      " would carry the velocity to c");
  }
  return *next;
}

double classical_velocity(std::uint64_t n, double epsilon) {
  return std::sqrt(static_cast<double>(n) * epsilon);
}

double delta_u_classical(std::uint64_t n, double epsilon) {
  // sqrt(n) - sqrt(n-1) rewritten as 1 / (sqrt(n) + sqrt(n-1)) to avoid
  // cancellation at large n.
  const double root_n = std::sqrt(static_cast<double>(n));
  const double root_prev = std::sqrt(static_cast<double>(n - 1));
  return std::sqrt(epsilon) / (root_n + root_prev);
}

double delta_u_relativistic(double u_n, double u_prev) {
  if (u_n < u_prev) {
    throw NonMonotone("velocity decreased from " + std::to_string(u_prev) + " to " +
                      std::to_string(u_n));
  }
  return u_n - u_prev;
}

double lorentz_gamma(double u) {
  if (!(u < 1.0)) throw DomainError("Lorentz factor undefined for u >= 1");
  return 1.0 / std::sqrt(1.0 - u * u);
}

double str_energy(double u) { return lorentz_gamma(u); }

double interaction_energy_plot(double u) { return 1.0 + 0.5 * u * u; }

bool is_degenerate_step(double u_n, double u_prev) {
  return u_n - u_prev < degenerate_increment_floor();
}

double alpha(std::uint64_t n, double u_n, double u_prev, double epsilon) {
  const double du_r = delta_u_relativistic(u_n, u_prev);
  if (is_degenerate_step(u_n, u_prev)) {
    throw DegenerateStep("velocity increment " + std::to_string(du_r) +
                         " below noise floor at step " + std::to_string(n));
  }
  const double du_c = delta_u_classical(n, epsilon);
  return (du_c / du_r) * (classical_velocity(n, epsilon) / u_n);
}

ComparisonRow make_row(std::uint64_t n, double u_n, double u_prev, double epsilon) {
  ComparisonRow row;
  row.n = n;
  row.u_r = u_n;
  row.u_c = classical_velocity(n, epsilon);
  row.energy_interaction = interaction_energy_plot(u_n);
  row.energy_str = str_energy(u_n);
  row.gamma = lorentz_gamma(u_n);
  if (n >= 1) {
    if (is_degenerate_step(u_n, u_prev)) {
      row.degenerate = true;
    } else {
      row.alpha = alpha(n, u_n, u_prev, epsilon);
    }
  }
  return row;
}

}  // namespace photon_kick
