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

/**
 * @file spin_env.hpp
 * @brief Spin-1/2 state-transfer task on a discretized Bloch sphere.
 *
 * Three controls per step: free precession U1 = exp(-i Iz pi/15) and the
 * two pulsed rotations U2,3 = exp(-i (Iz +- 0.5 Ix) pi/15). The agent sees
 * the (theta, phi) grid cell of the evolving state; the state itself is
 * evolved exactly, so the cell index is only approximately Markov.
 */

#pragma once

#include <memory>
#include <numbers>
#include <vector>

#include "qsteer/environment.hpp"

namespace qsteer::env {

struct SpinHalfEnvConfig {
  std::size_t theta_bins = 60;
  std::size_t phi_bins = 60;
  quantum::BlochAngles initial{std::numbers::pi / 60.0, std::numbers::pi / 30.0};
  quantum::BlochAngles target{41.0 * std::numbers::pi / 60.0, 29.0 * std::numbers::pi / 30.0};
  double success_fidelity = 0.999;
  std::size_t step_cap = 10000;
  double step_reward = -1.0;
  double goal_reward = 1000.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// The Pauli spin operators Iz = sigma_z / 2 and Ix = sigma_x / 2.
linalg::ComplexMatrix spin_iz();
linalg::ComplexMatrix spin_ix();

/// {U1, U2, U3}, indexed by action.
std::vector<quantum::Propagator> build_spin_propagators();

/// Grid cell of a Bloch point: theta row-major, phi wrapping.
std::size_t bloch_discretize(quantum::BlochAngles angles, std::size_t theta_bins,
                             std::size_t phi_bins);

class SpinHalfEnv final : public QuantumEnvironment {
 public:
  explicit SpinHalfEnv(SpinHalfEnvConfig config = {});

  std::string kind() const override { return "spin_half"; }
  std::size_t n_states() const override { return config_.theta_bins * config_.phi_bins; }
  std::size_t n_actions() const override { return 3; }
  std::unique_ptr<Environment> clone() const override;
  std::span<const quantum::Propagator> propagators() const override { return *propagators_; }

  const SpinHalfEnvConfig& config() const { return config_; }
  using QuantumEnvironment::set_target;
  void set_target(quantum::BlochAngles target);

  /// Cell of the current state.
  std::size_t current_cell() const;

 protected:
  std::size_t do_reset() override;
  EnvStep do_step(std::size_t action) override;

 private:
  SpinHalfEnvConfig config_;
  std::shared_ptr<const std::vector<quantum::Propagator>> propagators_;
};

}  // namespace qsteer::env
