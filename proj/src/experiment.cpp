#include "photon_kick/experiment.hpp"

#include <cmath>
#include <exception>
#include <future>
#include <stdexcept>

#include "photon_kick/errors.hpp"

namespace photon_kick {

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::Tolerance:
      return "tolerance";
    case StopReason::Saturation:
      return "saturation";
    case StopReason::MaxSteps:
      return "max-steps";
  }
  return "unknown";
}

RunOutput run_to_convergence(const SimulationConfig& config) {
  config.validate();

  RunOutput out;
  ParticleState state = initial_state(config.convention);
  double previous_u = 0.0;
  std::size_t next_target = 0;
  const auto& targets = config.velocity_targets;

  for (;;) {
    if (dilation_increment(state.u) < config.step_tolerance) {
      out.summary.converged = true;
      out.summary.stop_reason = StopReason::Tolerance;
      break;
    }
    if (state.n >= config.max_steps) {
      out.summary.stop_reason = StopReason::MaxSteps;
      break;
    }
    auto next = advance(state, config.epsilon);
    if (!next) {
      out.summary.converged = true;
      out.summary.stop_reason = StopReason::Saturation;
      break;
    }
    previous_u = state.u;
    state = *next;

    bool record = state.n % config.sample_stride == 0;
    while (next_target < targets.size() && state.u >= targets[next_target]) {
      record = true;
      ++next_target;
    }
    if (record) out.rows.push_back(make_row(state.n, state.u, previous_u, config.epsilon));
  }

  if (state.n > 0 && (out.rows.empty() || out.rows.back().n != state.n)) {
    out.rows.push_back(make_row(state.n, state.u, previous_u, config.epsilon));
  }

  out.summary.steps_taken = state.n;
  out.summary.final_u = state.u;
  out.summary.final_kinetic = 0.5 * state.u * state.u;
  out.summary.final_dilation_sum = state.dilation_sum();
  out.summary.convention = config.convention;
  return out;
}

std::vector<ComparisonRow> compare_models(const SimulationConfig& config) {
  SimulationConfig effective = config;
  if (effective.velocity_targets.empty()) {
    effective.velocity_targets = default_velocity_targets();
  }
  return run_to_convergence(effective).rows;
}

SweepResult deviation_statistics(double epsilon, const std::vector<ComparisonRow>& rows,
                                 double low, double high) {
  SweepResult result;
  result.epsilon = epsilon;
  double total = 0.0;
  for (const auto& row : rows) {
    if (row.degenerate || !row.alpha || row.u_r < low || row.u_r > high) continue;
    const double deviation = std::abs(*row.alpha - row.gamma);
    if (deviation > result.max_abs_deviation) result.max_abs_deviation = deviation;
    total += deviation;
    ++result.sample_count;
  }
  if (result.sample_count == 0) {
    result.failed = true;
    result.error = "no non-degenerate samples in the deviation window";
    result.max_abs_deviation = std::nan("");
    result.mean_abs_deviation = std::nan("");
  } else {
    result.mean_abs_deviation = total / static_cast<double>(result.sample_count);
  }
  return result;
}

namespace {

SweepResult sweep_entry(double epsilon, SimulationConfig config) {
  config.epsilon = epsilon;
  try {
    return deviation_statistics(epsilon, compare_models(config));
  } catch (const std::exception& e) {
    SweepResult failed;
    failed.epsilon = epsilon;
    failed.failed = true;
    failed.error = e.what();
    failed.max_abs_deviation = std::nan("");
    failed.mean_abs_deviation = std::nan("");
    return failed;
  }
}

}  // namespace

std::vector<SweepResult> sweep_epsilon(const std::vector<double>& epsilons,
                                       const SimulationConfig& base_config) {
  if (epsilons.empty()) throw ConfigError("sweep needs at least one epsilon");

  std::vector<std::future<SweepResult>> pending;
  pending.reserve(epsilons.size());
  for (double epsilon : epsilons) {
    pending.push_back(std::async(std::launch::async, sweep_entry, epsilon, base_config));
  }
  std::vector<SweepResult> results;
  results.reserve(pending.size());
  for (auto& entry : pending) results.push_back(entry.get());
  return results;
}

}  // namespace photon_kick
