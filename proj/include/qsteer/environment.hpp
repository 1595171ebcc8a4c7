// Copyright 2026 The qsteer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsteer/quantum.hpp"

namespace qsteer::env {

/// Outcome of one environment transition.
struct EnvStep {
  std::size_t next_state = 0;
  double reward = 0.0;
  /// Episode is over (goal, horizon, absorbing state or step cap).
  bool terminal = false;
  /// Ended by the step cap rather than by the task itself; value bootstrapping continues through it.
  bool truncated = false;
  /// Task goal met on this step.
  bool success = false;
  /// Fidelity of the post-step quantum state to the target; present iff supports_fidelity().
  std::optional<double> fidelity;
};

/**
 * Discrete episodic MDP with a shared action set across states.
 *
 * step() is rejected after a terminal transition until reset() is called,
 * and actions outside [0, n_actions) are rejected before the concrete
 * environment sees them.
 */
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string kind() const = 0;
  virtual std::size_t n_states() const = 0;
  virtual std::size_t n_actions() const = 0;
  virtual bool supports_fidelity() const { return false; }

  /// Re-key the environment's own randomness; deterministic environments ignore it.
  virtual void seed(std::uint64_t /*key*/) {}

  virtual std::unique_ptr<Environment> clone() const = 0;

  std::size_t reset();
  EnvStep step(std::size_t action);

  bool done() const { return done_; }
  std::size_t steps_taken() const { return steps_; }

 protected:
  virtual std::size_t do_reset() = 0;
  virtual EnvStep do_step(std::size_t action) = 0;

 private:
  bool started_ = false;
  bool done_ = false;
  std::size_t steps_ = 0;
};

/// Environment whose internal state is a controlled quantum system with a target.
class QuantumEnvironment : public Environment {
 public:
  bool supports_fidelity() const override { return true; }

  /// Swap the target; state space, actions and any learned tables are unaffected.
  virtual void set_target(const quantum::QuantumState& target);

  const quantum::QuantumState& initial_state() const { return initial_; }
  const quantum::QuantumState& target_state() const { return target_; }
  /// Current amplitudes of the evolving state.
  std::span<const quantum::Complex> amplitudes() const { return state_.amplitudes(); }
  double current_fidelity() const { return state_.fidelity_to(target_); }

  /// Cached per-action propagators; index == action.
  virtual std::span<const quantum::Propagator> propagators() const = 0;

 protected:
  QuantumEnvironment(quantum::QuantumState initial, quantum::QuantumState target);

  quantum::StateBuffer& buffer() { return state_; }
  const quantum::StateBuffer& buffer() const { return state_; }

 private:
  quantum::QuantumState initial_;
  quantum::QuantumState target_;
  quantum::StateBuffer state_;
};

/// Retarget a quantum environment; throws std::invalid_argument for environments without fidelity.
void set_target(Environment& env, const quantum::QuantumState& target);

}  // namespace qsteer::env
