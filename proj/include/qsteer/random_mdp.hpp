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

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qsteer/environment.hpp"
#include "qsteer/rng.hpp"

namespace qsteer::env {

/// Explicit finite MDP: transition[s][a][s'], reward[s][a], one absorbing terminal state.
struct MdpTables {
  std::size_t n_states = 0;
  std::size_t n_actions = 0;
  std::size_t terminal = 0;
  std::vector<double> transition;  // (s * n_actions + a) * n_states + s'
  std::vector<double> reward;      // s * n_actions + a

  double p(std::size_t s, std::size_t a, std::size_t next) const {
    return transition[(s * n_actions + a) * n_states + next];
  }
  double r(std::size_t s, std::size_t a) const { return reward[s * n_actions + a]; }

  /// Throws unless every transition row is a probability vector within tol.
  void validate(double tol = 1e-12) const;

  bool operator==(const MdpTables&) const = default;
};

/// Sampled environment over explicit tables. Episodes start in start_state, or
/// uniformly among non-terminal states when none is given.
class TabularMdpEnv final : public Environment {
 public:
  TabularMdpEnv(MdpTables tables, std::optional<std::size_t> start_state = std::nullopt,
                std::size_t step_cap = 1000);

  std::string kind() const override { return "random_mdp"; }
  std::size_t n_states() const override { return tables_.n_states; }
  std::size_t n_actions() const override { return tables_.n_actions; }
  void seed(std::uint64_t key) override { rng_ = Rng(key); }
  std::unique_ptr<Environment> clone() const override;

  const MdpTables& tables() const { return tables_; }

 protected:
  std::size_t do_reset() override;
  EnvStep do_step(std::size_t action) override;

 private:
  MdpTables tables_;
  std::optional<std::size_t> start_state_;
  std::size_t step_cap_;
  std::size_t state_ = 0;
  Rng rng_{0};
};

/// Random MDP tables: transition rows are normalized uniform draws over all
/// states, rewards uniform in [-1, 1], and the last state is absorbing with reward 0.
MdpTables random_mdp_tables(std::size_t n_states, std::size_t n_actions, std::uint64_t seed);

std::unique_ptr<TabularMdpEnv> make_random_mdp(std::size_t n_states, std::size_t n_actions,
                                               std::uint64_t seed, std::size_t step_cap = 1000);

}  // namespace qsteer::env
