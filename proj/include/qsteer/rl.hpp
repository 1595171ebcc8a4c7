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
 * @file rl.hpp
 * @brief Tabular value/policy tables, action selectors and update rules.
 *
 * The probabilistic strategies keep a per-state action distribution next
 * to the Q-table. After an action is taken its raw probability is nudged by
 * k * (r + max Q(s', .)) (plus the successor's fidelity to the target in
 * the fidelity-guided variant) and the row is renormalized with a floor, so
 * exploration never collapses an action to zero probability.
 */

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsteer/rng.hpp"

namespace qsteer::rl {

/// n_states x n_actions table of action values, zero-initialized.
class QTable {
 public:
  QTable(std::size_t n_states, std::size_t n_actions);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_actions() const { return n_actions_; }

  double& operator()(std::size_t s, std::size_t a) { return values_[s * n_actions_ + a]; }
  double operator()(std::size_t s, std::size_t a) const { return values_[s * n_actions_ + a]; }

  std::span<const double> row(std::size_t s) const {
    return {values_.data() + s * n_actions_, n_actions_};
  }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double max_value(std::size_t s) const;

  bool operator==(const QTable&) const = default;

 private:
  std::size_t n_states_;
  std::size_t n_actions_;
  std::vector<double> values_;
};

inline constexpr double kDefaultProbabilityFloor = 1e-6;

/// n_states x n_actions action-selection probabilities; rows start uniform.
class PolicyTable {
 public:
  PolicyTable(std::size_t n_states, std::size_t n_actions, double p_min = kDefaultProbabilityFloor);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_actions() const { return n_actions_; }
  double p_min() const { return p_min_; }

  double operator()(std::size_t s, std::size_t a) const { return probs_[s * n_actions_ + a]; }
  std::span<const double> row(std::size_t s) const {
    return {probs_.data() + s * n_actions_, n_actions_};
  }
  std::span<const double> values() const { return probs_; }

  /// Replace a row; the row is re-floored and renormalized on the way in.
  void set_row(std::size_t s, std::span<const double> raw);

  /// Restore a saved row verbatim. Throws unless it already sums to 1 within 1e-9
  /// with every entry in [p_min, 1].
  void load_row(std::size_t s, std::span<const double> row);

  bool operator==(const PolicyTable&) const = default;

 private:
  std::size_t n_states_;
  std::size_t n_actions_;
  double p_min_;
  std::vector<double> probs_;
};

enum class StrategyKind { greedy, epsilon_greedy, softmax, probabilistic, fidelity_probabilistic };

struct StrategyConfig {
  StrategyKind kind = StrategyKind::fidelity_probabilistic;
  double epsilon = 0.1;
  double tau = 1.0;
  double k = 0.01;

  void validate() const;
  bool uses_policy_table() const {
    return kind == StrategyKind::probabilistic || kind == StrategyKind::fidelity_probabilistic;
  }
};

/// Canonical short names: greedy, ql, softmax, pql, fpql.
std::string_view strategy_name(StrategyKind kind);
/// Accepts the canonical names and the long forms (epsilon_greedy, probabilistic, ...).
StrategyKind parse_strategy(std::string_view name);

/// Q(s,a) <- (1 - alpha) Q(s,a) + alpha (r + gamma max_a' Q(s_next, a')); the bootstrap is 0 when terminal.
void q_update(QTable& q, std::size_t s, std::size_t a, double r, std::size_t s_next, double alpha,
              double gamma, bool terminal);

/// Argmax of the row, lowest index on ties.
std::size_t greedy_action(const QTable& q, std::size_t s);

std::size_t epsilon_greedy_select(const QTable& q, std::size_t s, double epsilon, Rng& rng);

/// Boltzmann sampling with max-subtraction.
std::size_t softmax_select(const QTable& q, std::size_t s, double tau, Rng& rng);

/// Inverse-CDF draw from a policy row; throws if the row is not normalized within 1e-6.
std::size_t probabilistic_select(const PolicyTable& p, std::size_t s, Rng& rng);

/// Inverse-CDF draw from an arbitrary probability row.
std::size_t sample_row(std::span<const double> row, Rng& rng);

/**
 * Clamp raw entries below at p_min and normalize to the simplex.
 *
 * Entries that would still fall under p_min after normalization are pinned
 * to p_min and the remaining mass is shared proportionally among the rest,
 * so every output entry is >= p_min and sums to 1. Non-finite entries are
 * treated as p_min; a row with no finite entry is rejected.
 */
std::vector<double> normalize_row(std::span<const double> raw, double p_min);

/// p(s,a) += k (r + max_q_next), then normalize_row.
void policy_update_pql(PolicyTable& p, std::size_t s, std::size_t a, double r, double max_q_next, double k);

/// p(s,a) += k (r + max_q_next + fidelity_next), then normalize_row.
void policy_update_fpql(PolicyTable& p, std::size_t s, std::size_t a, double r, double max_q_next,
                        double fidelity_next, double k);

/// Shannon entropy of a probability row in bits.
double entropy_bits(std::span<const double> row);
double exploration_entropy(const PolicyTable& p, std::size_t s);
double mean_exploration_entropy(const PolicyTable& p);

/// Action distribution the strategy would sample from in state s.
std::vector<double> selection_distribution(const StrategyConfig& strategy, const QTable& q,
                                           const PolicyTable& p, std::size_t s);

/// Mean over states of the entropy of selection_distribution.
double mean_selection_entropy(const StrategyConfig& strategy, const QTable& q, const PolicyTable& p);

/// Draw an action according to the strategy.
std::size_t select_action(const StrategyConfig& strategy, const QTable& q, const PolicyTable& p,
                          std::size_t s, Rng& rng);

}  // namespace qsteer::rl
