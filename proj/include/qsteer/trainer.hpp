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
 * @file trainer.hpp
 * @brief Episode loop, learning-rate schedules, value-iteration oracle and
 *        multi-seed strategy comparison.
 *
 * Every episode draws from its own random stream keyed by (seed, episode),
 * and stochastic environments are re-keyed the same way before reset, so a
 * (config, seed) pair fixes every field of a RunResult except wall time.
 */

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qsteer/environment.hpp"
#include "qsteer/random_mdp.hpp"
#include "qsteer/rl.hpp"

namespace qsteer::train {

enum class ScheduleKind { constant, harmonic, power };

/// alpha_t for the t-th visit (t >= 1) of a state-action pair.
struct LearningRateSchedule {
  ScheduleKind kind = ScheduleKind::constant;
  double scale = 0.01;  // alpha for constant, c for c/t and c/t^rho
  double exponent = 1.0;

  double at(std::uint64_t visit) const;
  void validate() const;
  std::string describe() const;

  static LearningRateSchedule constant(double alpha) { return {ScheduleKind::constant, alpha, 0.0}; }
  static LearningRateSchedule harmonic(double c) { return {ScheduleKind::harmonic, c, 1.0}; }
  static LearningRateSchedule power(double c, double rho) { return {ScheduleKind::power, c, rho}; }
};

/// Throws std::invalid_argument for an unknown id (constant, harmonic, power).
LearningRateSchedule parse_schedule(std::string_view id, double scale, double exponent = 1.0);
std::string_view schedule_name(ScheduleKind kind);

enum class Verdict { pass, warn, fail };
std::string_view verdict_name(Verdict v);

struct RobbinsMonroReport {
  Verdict verdict = Verdict::pass;
  bool sum_diverges = false;
  bool square_summable = false;
  std::string message;
};

/**
 * Check sum alpha_t = inf and sum alpha_t^2 < inf analytically.
 *
 * A constant rate fails square-summability but is downgraded to a warning
 * because the reference experiments run with constant alpha = 0.01.
 */
RobbinsMonroReport check_robbins_monro(const LearningRateSchedule& schedule);

enum class ConvergenceMetric { steps, fidelity };

/// Retarget the environment during training, at a fixed episode or once the run first converges.
struct TargetChange {
  std::optional<std::size_t> at_episode;
  bool at_convergence = false;
  quantum::QuantumState target;
};

struct TrainConfig {
  rl::StrategyConfig strategy;
  LearningRateSchedule alpha = LearningRateSchedule::constant(0.01);
  double gamma = 0.99;
  std::size_t max_episodes = 500;
  std::size_t step_cap = 10000;
  std::uint64_t seed = 0;
  std::size_t convergence_window = 20;
  double convergence_tolerance = 0.0;
  ConvergenceMetric metric = ConvergenceMetric::steps;
  double p_min = rl::kDefaultProbabilityFloor;
  std::optional<TargetChange> target_change;

  void validate() const;
};

struct EpisodeRecord {
  std::size_t episode = 0;
  std::size_t steps = 0;
  double total_reward = 0.0;
  std::optional<double> terminal_fidelity;
  double mean_entropy = 0.0;
  bool truncated = false;
  /// Goal reached (spin), horizon fidelity above threshold (lambda), absorbed (MDP).
  bool success = false;

  bool operator==(const EpisodeRecord&) const = default;
};

/// Mutable learning state carried across episodes.
struct Learner {
  rl::QTable q;
  rl::PolicyTable policy;
  std::vector<std::uint64_t> visits;

  Learner(std::size_t n_states, std::size_t n_actions, double p_min = rl::kDefaultProbabilityFloor);
  bool operator==(const Learner&) const = default;
};

struct RunResult {
  std::vector<EpisodeRecord> records;
  rl::QTable q;
  rl::PolicyTable policy;
  std::optional<std::size_t> convergence_episode;
  double wall_time = 0.0;
  /// Episode index at which the target was swapped, if it was.
  std::optional<std::size_t> change_episode;
  /// Convergence of the post-swap records, counted from change_episode.
  std::optional<std::size_t> reconvergence_episode;
  std::uint64_t total_steps = 0;
};

/// Throws std::invalid_argument when the strategy needs a fidelity signal the environment lacks.
void check_compatible(const env::Environment& env, const TrainConfig& cfg);

/// One episode of learning; resets the environment itself.
EpisodeRecord run_episode(env::Environment& env, Learner& learner, const TrainConfig& cfg, Rng& rng,
                          std::size_t episode_index);

RunResult train(env::Environment& env, const TrainConfig& cfg);

/**
 * Smallest e such that episodes [e, e + window) are all successful and not
 * truncated, and each stays within tolerance of the window's best value:
 * steps <= min + tolerance, or fidelity >= max - tolerance.
 */
std::optional<std::size_t> convergence_episode(std::span<const EpisodeRecord> records, std::size_t window,
                                               double tolerance, ConvergenceMetric metric);

enum class RolloutMode { greedy, policy };

struct TrajectoryStep {
  std::size_t step = 0;
  std::size_t state = 0;
  std::size_t action = 0;
  double reward = 0.0;
  std::optional<double> fidelity;
  std::vector<quantum::Complex> amplitudes;
};

struct Trajectory {
  std::vector<TrajectoryStep> steps;
  bool success = false;
  bool truncated = false;
  std::optional<double> terminal_fidelity;
};

/// Learning-free rollout. Policy mode follows the most probable action of each row.
Trajectory evaluate_policy(env::Environment& env, const rl::QTable& q, RolloutMode mode,
                           const rl::PolicyTable* policy = nullptr);

/// Rollout mode matching how a strategy acts once trained.
RolloutMode default_rollout_mode(rl::StrategyKind kind);

/// Bellman fixed point over explicit tables; terminates when the max update is below tol.
rl::QTable value_iteration(const env::MdpTables& tables, double gamma, double tol,
                           std::size_t max_iterations = 1000000);

using EnvFactory = std::function<std::unique_ptr<env::Environment>(std::uint64_t seed)>;

struct ComparisonRun {
  std::string strategy;
  std::uint64_t seed = 0;
  /// Empty when the run threw; error then holds the message.
  std::optional<RunResult> result;
  std::string error;
};

struct ComparisonRow {
  std::string strategy;
  std::size_t seed_count = 0;
  /// Median over seeds with non-converged runs ranked last; empty when the median run never converged.
  std::optional<double> median_convergence_episode;
  double success_rate = 0.0;
  double median_cumulative_steps = 0.0;
};

struct Comparison {
  std::vector<ComparisonRun> runs;  // sorted by (strategy, seed)
  std::vector<ComparisonRow> rows;  // sorted by strategy name
};

/// Median with std::nullopt ranked above every value.
std::optional<double> median_with_missing(std::vector<std::optional<double>> values);

Comparison compare_strategies(const EnvFactory& factory, const std::vector<rl::StrategyConfig>& strategies,
                              const std::vector<std::uint64_t>& seeds, const TrainConfig& cfg,
                              std::size_t jobs = 1);

/// Per-strategy aggregate of finished runs; failed runs are left out.
std::vector<ComparisonRow> aggregate_runs(const std::vector<ComparisonRun>& runs);

}  // namespace qsteer::train
