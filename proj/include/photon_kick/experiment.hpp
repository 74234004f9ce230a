#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "photon_kick/kinematics.hpp"

namespace photon_kick {

enum class StopReason {
  Tolerance,   // increment sqrt(1 - u^2) fell below step_tolerance
  Saturation,  // the next absorption would carry u to c
  MaxSteps,    // step cap hit first
};

const char* to_string(StopReason reason);

struct RunSummary {
  bool converged = false;
  StopReason stop_reason = StopReason::MaxSteps;
  std::uint64_t steps_taken = 0;
  double final_u = 0.0;
  double final_kinetic = 0.0;
  double final_dilation_sum = 0.0;
  Convention convention = Convention::FirstKickUndilated;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct RunOutput {
  RunSummary summary;
  std::vector<ComparisonRow> rows;
};

/// Iterates absorptions until the stopping rule fires.
///
/// Rows are recorded for n >= 1 at every sample_stride-th step, at the first
/// step whose velocity reaches each velocity target, and always at the final
/// step. Memory is O(recorded rows).
RunOutput run_to_convergence(const SimulationConfig& config);

/// Same run with the default target grid when none are configured.
std::vector<ComparisonRow> compare_models(const SimulationConfig& config);

/// Lower and upper velocity bounds of the alpha-gamma deviation window.
inline constexpr double kDeviationWindowLow = 0.05;
inline constexpr double kDeviationWindowHigh = 0.99;

struct SweepResult {
  double epsilon = 0.0;
  double max_abs_deviation = 0.0;
  double mean_abs_deviation = 0.0;
  std::uint64_t sample_count = 0;
  bool failed = false;
  std::string error;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

/// |alpha - gamma| statistics over non-degenerate rows with u_r inside the
/// window. Marks the result failed when no row qualifies.
SweepResult deviation_statistics(double epsilon, const std::vector<ComparisonRow>& rows,
                                 double low = kDeviationWindowLow,
                                 double high = kDeviationWindowHigh);

/// Runs compare_models once per epsilon, concurrently. Results come back in
/// input order; a failing entry is recorded, not thrown.
std::vector<SweepResult> sweep_epsilon(const std::vector<double>& epsilons,
                                       const SimulationConfig& base_config);

}  // namespace photon_kick
