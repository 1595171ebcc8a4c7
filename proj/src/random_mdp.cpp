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

#include "qsteer/random_mdp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsteer::env {

void MdpTables::validate(double tol) const {
  if (n_states < 2 || n_actions < 1) throw std::invalid_argument("MdpTables: too few states/actions");
  if (terminal >= n_states) throw std::invalid_argument("MdpTables: terminal index out of range");
  if (transition.size() != n_states * n_actions * n_states || reward.size() != n_states * n_actions) {
    throw std::invalid_argument("MdpTables: table sizes do not match dimensions");
  }
  for (std::size_t s = 0; s < n_states; ++s) {
    for (std::size_t a = 0; a < n_actions; ++a) {
      double sum = 0.0;
      for (std::size_t t = 0; t < n_states; ++t) {
        const double v = p(s, a, t);
        if (!(v >= 0.0) || !std::isfinite(v)) {
          throw std::invalid_argument("MdpTables: negative or non-finite transition probability");
        }
        sum += v;
      }
      if (std::abs(sum - 1.0) > tol) {
        throw std::invalid_argument("MdpTables: transition row (" + std::to_string(s) + ", " +
                                    std::to_string(a) + ") sums to " + std::to_string(sum));
      }
      if (!std::isfinite(r(s, a))) throw std::invalid_argument("MdpTables: non-finite reward");
    }
  }
}

TabularMdpEnv::TabularMdpEnv(MdpTables tables, std::optional<std::size_t> start_state,
                             std::size_t step_cap)
    : tables_(std::move(tables)), start_state_(start_state), step_cap_(step_cap) {
  tables_.validate(1e-9);
  if (start_state_ && *start_state_ >= tables_.n_states) {
    throw std::invalid_argument("TabularMdpEnv: start state out of range");
  }
  if (step_cap_ < 1) throw std::invalid_argument("TabularMdpEnv: step_cap must be >= 1");
}

std::unique_ptr<Environment> TabularMdpEnv::clone() const {
  return std::make_unique<TabularMdpEnv>(*this);
}

std::size_t TabularMdpEnv::do_reset() {
  if (start_state_) {
    state_ = *start_state_;
  } else {
    // Uniform over non-terminal states.
    std::size_t k = rng_.uniform_index(tables_.n_states - 1);
    state_ = k >= tables_.terminal ? k + 1 : k;
  }
  return state_;
}

EnvStep TabularMdpEnv::do_step(std::size_t action) {
  const double u = rng_.uniform01();
  double cum = 0.0;
  std::size_t next = tables_.n_states;
  std::size_t last_reachable = 0;
  for (std::size_t t = 0; t < tables_.n_states; ++t) {
    const double pt = tables_.p(state_, action, t);
    if (pt <= 0.0) continue;
    last_reachable = t;
    cum += pt;
    if (u < cum) {
      next = t;
      break;
    }
  }
  if (next == tables_.n_states) next = last_reachable;  // row sum rounded below u
  EnvStep out;
  out.reward = tables_.r(state_, action);
  out.next_state = next;
  state_ = next;
  if (next == tables_.terminal) {
    out.terminal = true;
    out.success = true;
  } else if (steps_taken() + 1 >= step_cap_) {
    out.terminal = true;
    out.truncated = true;
  }
  return out;
}

MdpTables random_mdp_tables(std::size_t n_states, std::size_t n_actions, std::uint64_t seed) {
  if (n_states < 2 || n_actions < 2) {
    throw std::invalid_argument("make_random_mdp: need n_states >= 2 and n_actions >= 2");
  }
  Rng rng(derive_seed(seed, 0x6d6470ULL));
  MdpTables t;
  t.n_states = n_states;
  t.n_actions = n_actions;
  t.terminal = n_states - 1;
  t.transition.assign(n_states * n_actions * n_states, 0.0);
  t.reward.assign(n_states * n_actions, 0.0);
  for (std::size_t s = 0; s < n_states; ++s) {
    for (std::size_t a = 0; a < n_actions; ++a) {
      double* row = &t.transition[(s * n_actions + a) * n_states];
      if (s == t.terminal) {
        row[s] = 1.0;
        continue;
      }
      double sum = 0.0;
      for (std::size_t n = 0; n < n_states; ++n) {
        // (0, 1] so no successor is impossible.
        row[n] = 1.0 - rng.uniform01();
        sum += row[n];
      }
      for (std::size_t n = 0; n < n_states; ++n) row[n] /= sum;
      t.reward[s * n_actions + a] = rng.uniform(-1.0, 1.0);
    }
  }
  return t;
}

std::unique_ptr<TabularMdpEnv> make_random_mdp(std::size_t n_states, std::size_t n_actions,
                                               std::uint64_t seed, std::size_t step_cap) {
  return std::make_unique<TabularMdpEnv>(random_mdp_tables(n_states, n_actions, seed), std::nullopt,
                                         step_cap);
}

}  // namespace qsteer::env
