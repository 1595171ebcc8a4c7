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

#include "qsteer/spin_env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsteer::env {

using quantum::BlochAngles;
using quantum::Propagator;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStepAngle = kPi / 15.0;

bool angles_in_range(BlochAngles a) {
  return a.theta >= 0.0 && a.theta <= kPi && a.phi >= 0.0 && a.phi < 2.0 * kPi;
}

}  // namespace

void SpinHalfEnvConfig::validate() const {
  if (theta_bins < 2) throw std::invalid_argument("theta_bins must be >= 2");
  if (phi_bins < 2) throw std::invalid_argument("phi_bins must be >= 2");
  if (step_cap < 1) throw std::invalid_argument("step_cap must be >= 1");
  if (!(success_fidelity > 0.0 && success_fidelity <= 1.0)) {
    throw std::invalid_argument("success_fidelity must lie in (0, 1]");
  }
  if (!angles_in_range(initial)) throw std::invalid_argument("initial angles out of range");
  if (!angles_in_range(target)) throw std::invalid_argument("target angles out of range");
  if (!std::isfinite(step_reward) || !std::isfinite(goal_reward)) {
    throw std::invalid_argument("rewards must be finite");
  }
}

linalg::ComplexMatrix spin_iz() { return {{0.5, 0.0}, {0.0, -0.5}}; }
linalg::ComplexMatrix spin_ix() { return {{0.0, 0.5}, {0.5, 0.0}}; }

std::vector<Propagator> build_spin_propagators() {
  const auto iz = spin_iz();
  const auto ix = spin_ix();
  std::vector<Propagator> out;
  out.emplace_back(linalg::expm_hermitian(iz, kStepAngle), "U1");
  out.emplace_back(linalg::expm_hermitian(iz + ix * 0.5, kStepAngle), "U2");
  out.emplace_back(linalg::expm_hermitian(iz - ix * 0.5, kStepAngle), "U3");
  return out;
}

std::size_t bloch_discretize(BlochAngles angles, std::size_t theta_bins, std::size_t phi_bins) {
  const auto tb = static_cast<double>(theta_bins);
  const auto pb = static_cast<double>(phi_bins);
  const double t = std::floor(angles.theta / kPi * tb);
  const auto row = static_cast<std::size_t>(std::clamp(t, 0.0, tb - 1.0));
  const double p = std::floor(angles.phi / (2.0 * kPi) * pb);
  const auto pb_i = static_cast<long long>(phi_bins);
  long long col = static_cast<long long>(p) % pb_i;
  if (col < 0) col += pb_i;
  return row * phi_bins + static_cast<std::size_t>(col);
}

SpinHalfEnv::SpinHalfEnv(SpinHalfEnvConfig config)
    : QuantumEnvironment(quantum::bloch_to_state(config.initial), quantum::bloch_to_state(config.target)),
      config_(config),
      propagators_(std::make_shared<const std::vector<Propagator>>(build_spin_propagators())) {
  config_.validate();
}

std::unique_ptr<Environment> SpinHalfEnv::clone() const {
  auto copy = std::make_unique<SpinHalfEnv>(*this);
  return copy;
}

void SpinHalfEnv::set_target(BlochAngles target) {
  if (!angles_in_range(target)) throw std::invalid_argument("set_target: angles out of range");
  config_.target = target;
  QuantumEnvironment::set_target(quantum::bloch_to_state(target));
}

std::size_t SpinHalfEnv::current_cell() const {
  return bloch_discretize(buffer().bloch(), config_.theta_bins, config_.phi_bins);
}

std::size_t SpinHalfEnv::do_reset() {
  buffer().assign(initial_state());
  return current_cell();
}

EnvStep SpinHalfEnv::do_step(std::size_t action) {
  buffer().apply((*propagators_)[action]);
  EnvStep out;
  out.next_state = current_cell();
  const double f = current_fidelity();
  out.fidelity = f;
  if (f >= config_.success_fidelity) {
    out.reward = config_.goal_reward;
    out.terminal = true;
    out.success = true;
  } else {
    out.reward = config_.step_reward;
    if (steps_taken() + 1 >= config_.step_cap) {
      out.terminal = true;
      out.truncated = true;
    }
  }
  return out;
}

}  // namespace qsteer::env
