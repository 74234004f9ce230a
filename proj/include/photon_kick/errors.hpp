#pragma once

#include <stdexcept>
#include <string>

namespace photon_kick {

/// Radicand 1 - u^2 went negative beyond slack, or a kick would reach c.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// step() was asked to go past SimulationConfig::max_steps.
class CapReached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Consecutive velocities decreased; the accumulation is corrupt.
class NonMonotone : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Velocity increment is below the floating-point noise floor for alpha.
class DegenerateStep : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A SimulationConfig violates one of its invariants.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace photon_kick
