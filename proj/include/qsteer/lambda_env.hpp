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
 * @file lambda_env.hpp
 * @brief Three-level Lambda system driven by a fixed-horizon pulse schedule.
 *
 * Each action picks a pulse count E in {-bound, ..., bound} and applies
 * U_E = exp(-i dt (H0 + coupling * E * H1)). The MDP state is the step
 * counter, so a learned policy is an open-loop pulse sequence.
 */

#pragma once

#include <memory>
#include <vector>

#include "qsteer/environment.hpp"

namespace qsteer::env {

enum class LambdaRewardMode { binary, fidelity_squared };

struct LambdaEnvConfig {
  std::size_t horizon = 100;
  int pulse_amplitudes = 20;
  double dt = 0.1;
  double success_fidelity = 0.99;
  double goal_reward = 1000.0;
  double coupling = 0.1;
  LambdaRewardMode reward_mode = LambdaRewardMode::binary;
  quantum::QuantumState initial = quantum::QuantumState::basis(3, 0);
  quantum::QuantumState target = quantum::QuantumState::basis(3, 2);

  void validate() const;
};

linalg::ComplexMatrix lambda_h0();
linalg::ComplexMatrix lambda_h1();

/// U_E for E = -bound..bound, indexed by action = E + bound.
std::vector<quantum::Propagator> build_lambda_propagators(const LambdaEnvConfig& config);

class LambdaEnv final : public QuantumEnvironment {
 public:
  explicit LambdaEnv(LambdaEnvConfig config = {});

  std::string kind() const override { return "lambda"; }
  std::size_t n_states() const override { return config_.horizon + 1; }
  std::size_t n_actions() const override {
    return static_cast<std::size_t>(2 * config_.pulse_amplitudes + 1);
  }
  std::unique_ptr<Environment> clone() const override;
  std::span<const quantum::Propagator> propagators() const override { return *propagators_; }

  const LambdaEnvConfig& config() const { return config_; }
  void set_target(const quantum::QuantumState& target) override;

  /// Pulse count E carried by an action index.
  int pulse_of(std::size_t action) const { return static_cast<int>(action) - config_.pulse_amplitudes; }

 protected:
  std::size_t do_reset() override;
  EnvStep do_step(std::size_t action) override;

 private:
  LambdaEnvConfig config_;
  std::shared_ptr<const std::vector<quantum::Propagator>> propagators_;
};

}  // namespace qsteer::env
