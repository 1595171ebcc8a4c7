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

#include "qsteer/environment.hpp"

#include <stdexcept>

namespace qsteer::env {

std::size_t Environment::reset() {
  started_ = true;
  done_ = false;
  steps_ = 0;
  return do_reset();
}

EnvStep Environment::step(std::size_t action) {
  if (!started_) throw std::logic_error(kind() + ": step() before reset()");
  if (done_) throw std::logic_error(kind() + ": step() after terminal transition; call reset()");
  if (action >= n_actions()) {
    throw std::out_of_range(kind() + ": action " + std::to_string(action) + " outside [0, " +
                            std::to_string(n_actions()) + ")");
  }
  EnvStep out = do_step(action);
  ++steps_;
  done_ = out.terminal;
  return out;
}

QuantumEnvironment::QuantumEnvironment(quantum::QuantumState initial, quantum::QuantumState target)
    : initial_(std::move(initial)), target_(std::move(target)), state_(initial_) {
  if (initial_.dim() != target_.dim()) {
    throw std::invalid_argument("QuantumEnvironment: initial/target dimension mismatch");
  }
}

void QuantumEnvironment::set_target(const quantum::QuantumState& target) {
  if (target.dim() != target_.dim()) {
    throw std::invalid_argument("set_target: target dimension " + std::to_string(target.dim()) +
                                " does not match system dimension " + std::to_string(target_.dim()));
  }
  target_ = target;
}

void set_target(Environment& env, const quantum::QuantumState& target) {
  auto* q = dynamic_cast<QuantumEnvironment*>(&env);
  if (q == nullptr) {
    throw std::invalid_argument("set_target: environment '" + env.kind() + "' has no quantum target");
  }
  q->set_target(target);
}

}  // namespace qsteer::env
