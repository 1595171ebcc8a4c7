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

#include "qsteer/lambda_env.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsteer::env {

void LambdaEnvConfig::validate() const {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (pulse_amplitudes < 1) throw std::invalid_argument("pulse_amplitudes must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (!(success_fidelity > 0.0 && success_fidelity <= 1.0)) {
    throw std::invalid_argument("success_fidelity must lie in (0, 1]");
  }
  if (!std::isfinite(goal_reward) || !std::isfinite(coupling)) {
    throw std::invalid_argument("goal_reward and coupling must be finite");
  }
  if (initial.dim() != 3 || target.dim() != 3) {
    throw std::invalid_argument("initial and target must be 3-level states");
  }
}

linalg::ComplexMatrix lambda_h0() { return {{1.5, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}}; }
linalg::ComplexMatrix lambda_h1() { return {{0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}, {1.0, 1.0, 0.0}}; }

std::vector<quantum::Propagator> build_lambda_propagators(const LambdaEnvConfig& config) {
  const auto h0 = lambda_h0();
  const auto h1 = lambda_h1();
  std::vector<quantum::Propagator> out;
  out.reserve(static_cast<std::size_t>(2 * config.pulse_amplitudes + 1));
  for (int e = -config.pulse_amplitudes; e <= config.pulse_amplitudes; ++e) {
    const auto generator = h0 + h1 * (config.coupling * e);
    out.emplace_back(linalg::expm_hermitian(generator, config.dt), "E=" + std::to_string(e));
  }
  return out;
}

LambdaEnv::LambdaEnv(LambdaEnvConfig config)
    : QuantumEnvironment(config.initial, config.target), config_(std::move(config)) {
  config_.validate();
  propagators_ = std::make_shared<const std::vector<quantum::Propagator>>(build_lambda_propagators(config_));
}

std::unique_ptr<Environment> LambdaEnv::clone() const { return std::make_unique<LambdaEnv>(*this); }

void LambdaEnv::set_target(const quantum::QuantumState& target) {
  QuantumEnvironment::set_target(target);
  config_.target = target;
}

std::size_t LambdaEnv::do_reset() {
  buffer().assign(initial_state());
  return 0;
}

EnvStep LambdaEnv::do_step(std::size_t action) {
  buffer().apply((*propagators_)[action]);
  EnvStep out;
  out.next_state = steps_taken() + 1;
  const double f = current_fidelity();
  out.fidelity = f;
  if (out.next_state >= config_.horizon) {
    out.terminal = true;
    out.success = f >= config_.success_fidelity;
    switch (config_.reward_mode) {
      case LambdaRewardMode::binary:
        out.reward = out.success ? config_.goal_reward : 0.0;
        break;
      case LambdaRewardMode::fidelity_squared:
        out.reward = config_.goal_reward * f * f;
        break;
    }
  }
  return out;
}

}  // namespace qsteer::env
