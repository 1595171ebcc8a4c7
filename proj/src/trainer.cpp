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

#include "qsteer/trainer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>

namespace qsteer::train {

namespace {

// Stream ids for derive_seed.
constexpr std::uint64_t kAgentStream = 1;
constexpr std::uint64_t kEnvStream = 2;

}  // namespace

double LearningRateSchedule::at(std::uint64_t visit) const {
  const auto t = static_cast<double>(std::max<std::uint64_t>(visit, 1));
  switch (kind) {
    case ScheduleKind::constant: return scale;
    case ScheduleKind::harmonic: return scale / t;
    case ScheduleKind::power: return scale / std::pow(t, exponent);
  }
  return scale;
}

void LearningRateSchedule::validate() const {
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw std::invalid_argument("alpha: scale must lie in (0, 1], got " + std::to_string(scale));
  }
  if (kind == ScheduleKind::power && !(exponent > 0.0 && std::isfinite(exponent))) {
    throw std::invalid_argument("alpha: power exponent must be positive");
  }
}

std::string_view schedule_name(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::harmonic: return "harmonic";
    case ScheduleKind::power: return "power";
  }
  return "unknown";
}

std::string LearningRateSchedule::describe() const {
  auto num = [](double v) {
    std::ostringstream ss;
    ss << v;
    return ss.str();
  };
  switch (kind) {
    case ScheduleKind::constant: return "constant(" + num(scale) + ")";
    case ScheduleKind::harmonic: return "harmonic(" + num(scale) + "/t)";
    case ScheduleKind::power:
      return "power(" + num(scale) + "/t^" + num(exponent) + ")";
  }
  return "unknown";
}

LearningRateSchedule parse_schedule(std::string_view id, double scale, double exponent) {
  if (id == "constant") return LearningRateSchedule::constant(scale);
  if (id == "harmonic") return LearningRateSchedule::harmonic(scale);
  if (id == "power") return LearningRateSchedule::power(scale, exponent);
  throw std::invalid_argument("unknown learning-rate schedule '" + std::string(id) +
                              "' (expected constant, harmonic or power)");
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::warn: return "warn";
    case Verdict::fail: return "fail";
  }
  return "unknown";
}

RobbinsMonroReport check_robbins_monro(const LearningRateSchedule& schedule) {
  schedule.validate();
  RobbinsMonroReport out;
  switch (schedule.kind) {
    case ScheduleKind::constant:
      // sum c diverges, sum c^2 diverges too.
      out.sum_diverges = true;
      out.square_summable = false;
      out.verdict = Verdict::warn;
      out.message = "constant learning rate is not square-summable; convergence to Q* is not guaranteed";
      break;
    case ScheduleKind::harmonic:
      out.sum_diverges = true;
      out.square_summable = true;
      out.verdict = Verdict::pass;
      out.message = "harmonic schedule satisfies both step-size conditions";
      break;
    case ScheduleKind::power: {
      // p-series: sum t^-rho diverges iff rho <= 1; sum t^-2rho converges iff rho > 1/2.
      const double rho = schedule.exponent;
      out.sum_diverges = rho <= 1.0;
      out.square_summable = rho > 0.5;
      const bool ok = out.sum_diverges && out.square_summable;
      out.verdict = ok ? Verdict::pass : Verdict::fail;
      out.message = ok ? "power schedule exponent lies in (0.5, 1]"
                       : "power schedule exponent must lie in (0.5, 1]";
      break;
    }
  }
  return out;
}

void TrainConfig::validate() const {
  strategy.validate();
  alpha.validate();
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1) (discounted convergence needs gamma < 1)");
  }
  if (step_cap < 1) throw std::invalid_argument("step_cap must be >= 1");
  if (convergence_window < 1) throw std::invalid_argument("convergence_window must be >= 1");
  if (!(convergence_tolerance >= 0.0)) throw std::invalid_argument("convergence_tolerance must be >= 0");
  if (target_change && !target_change->at_episode && !target_change->at_convergence) {
    throw std::invalid_argument("target change needs an episode or at_convergence");
  }
}

Learner::Learner(std::size_t n_states, std::size_t n_actions, double p_min)
    : q(n_states, n_actions), policy(n_states, n_actions, p_min), visits(n_states * n_actions, 0) {}

void check_compatible(const env::Environment& env, const TrainConfig& cfg) {
  if (cfg.strategy.kind == rl::StrategyKind::fidelity_probabilistic && !env.supports_fidelity()) {
    throw std::invalid_argument("strategy fpql needs a fidelity signal but environment '" + env.kind() +
                                "' provides none");
  }
  if (cfg.target_change && !env.supports_fidelity()) {
    throw std::invalid_argument("target change requested on environment '" + env.kind() +
                                "' which has no quantum target");
  }
}

EpisodeRecord run_episode(env::Environment& env, Learner& learner, const TrainConfig& cfg, Rng& rng,
                          std::size_t episode_index) {
  check_compatible(env, cfg);
  auto& q = learner.q;
  auto& policy = learner.policy;
  if (q.n_states() != env.n_states() || q.n_actions() != env.n_actions() ||
      policy.n_states() != env.n_states() || policy.n_actions() != env.n_actions()) {
    throw std::invalid_argument("run_episode: table dimensions " + std::to_string(q.n_states()) + "x" +
                                std::to_string(q.n_actions()) + " do not match environment " +
                                std::to_string(env.n_states()) + "x" + std::to_string(env.n_actions()));
  }
  const auto kind = cfg.strategy.kind;
  const double k = cfg.strategy.k;

  EpisodeRecord rec;
  rec.episode = episode_index;
  std::size_t s = env.reset();
  bool finished = false;
  while (!finished && rec.steps < cfg.step_cap) {
    const std::size_t a = rl::select_action(cfg.strategy, q, policy, s, rng);
    const env::EnvStep out = env.step(a);
    ++rec.steps;
    rec.total_reward += out.reward;

    const bool absorbing = out.terminal && !out.truncated;
    auto& visits = learner.visits[s * q.n_actions() + a];
    ++visits;
    rl::q_update(q, s, a, out.reward, out.next_state, cfg.alpha.at(visits), cfg.gamma, absorbing);

    const double max_q_next = absorbing ? 0.0 : q.max_value(out.next_state);
    if (kind == rl::StrategyKind::probabilistic) {
      rl::policy_update_pql(policy, s, a, out.reward, max_q_next, k);
    } else if (kind == rl::StrategyKind::fidelity_probabilistic) {
      rl::policy_update_fpql(policy, s, a, out.reward, max_q_next, out.fidelity.value_or(0.0), k);
    }

    rec.terminal_fidelity = out.fidelity;
    rec.success = out.success;
    rec.truncated = out.truncated;
    finished = out.terminal;
    s = out.next_state;
  }
  if (!finished) rec.truncated = true;
  rec.mean_entropy = rl::mean_selection_entropy(cfg.strategy, q, policy);
  return rec;
}

RunResult train(env::Environment& env, const TrainConfig& cfg) {
  cfg.validate();
  check_compatible(env, cfg);
  const auto t0 = std::chrono::steady_clock::now();

  Learner learner(env.n_states(), env.n_actions(), cfg.p_min);
  std::vector<EpisodeRecord> records;
  records.reserve(cfg.max_episodes);
  std::optional<std::size_t> change_episode;
  std::optional<std::size_t> converged_at;
  std::uint64_t total_steps = 0;

  for (std::size_t ep = 0; ep < cfg.max_episodes; ++ep) {
    if (cfg.target_change && !change_episode) {
      const auto& tc = *cfg.target_change;
      const bool due = (tc.at_episode && ep >= *tc.at_episode) || (tc.at_convergence && converged_at);
      if (due) {
        env::set_target(env, tc.target);
        change_episode = ep;
      }
    }
    env.seed(derive_seed(cfg.seed, kEnvStream, ep));
    Rng rng = Rng::stream(cfg.seed, kAgentStream, ep);
    records.push_back(run_episode(env, learner, cfg, rng, ep));
    total_steps += records.back().steps;

    if (!converged_at && !change_episode && records.size() >= cfg.convergence_window) {
      const std::span<const EpisodeRecord> tail(records.end() - static_cast<std::ptrdiff_t>(cfg.convergence_window),
                                                records.end());
      if (convergence_episode(tail, cfg.convergence_window, cfg.convergence_tolerance, cfg.metric)) {
        converged_at = records.size() - cfg.convergence_window;
      }
    }
  }

  RunResult result{std::move(records), std::move(learner.q), std::move(learner.policy), std::nullopt, 0.0,
                   change_episode, std::nullopt, total_steps};
  const std::span<const EpisodeRecord> all(result.records);
  const auto before = change_episode ? all.first(*change_episode) : all;
  result.convergence_episode =
      convergence_episode(before, cfg.convergence_window, cfg.convergence_tolerance, cfg.metric);
  if (change_episode) {
    result.reconvergence_episode = convergence_episode(all.subspan(*change_episode), cfg.convergence_window,
                                                       cfg.convergence_tolerance, cfg.metric);
  }
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::optional<std::size_t> convergence_episode(std::span<const EpisodeRecord> records, std::size_t window,
                                               double tolerance, ConvergenceMetric metric) {
  if (window == 0) throw std::invalid_argument("convergence_episode: window must be >= 1");
  if (records.size() < window) return std::nullopt;
  auto ok = [](const EpisodeRecord& r) { return r.success && !r.truncated; };
  for (std::size_t e = 0; e + window <= records.size(); ++e) {
    const auto w = records.subspan(e, window);
    if (!std::all_of(w.begin(), w.end(), ok)) continue;
    bool stable = true;
    if (metric == ConvergenceMetric::steps) {
      std::size_t best = w.front().steps;
      for (const auto& r : w) best = std::min(best, r.steps);
      for (const auto& r : w) stable = stable && static_cast<double>(r.steps) <= static_cast<double>(best) + tolerance;
    } else {
      double best = 0.0;
      for (const auto& r : w) best = std::max(best, r.terminal_fidelity.value_or(0.0));
      for (const auto& r : w) stable = stable && r.terminal_fidelity && *r.terminal_fidelity >= best - tolerance;
    }
    if (stable) return e;
  }
  return std::nullopt;
}

RolloutMode default_rollout_mode(rl::StrategyKind kind) {
  return (kind == rl::StrategyKind::probabilistic || kind == rl::StrategyKind::fidelity_probabilistic)
             ? RolloutMode::policy
             : RolloutMode::greedy;
}

Trajectory evaluate_policy(env::Environment& env, const rl::QTable& q, RolloutMode mode,
                           const rl::PolicyTable* policy) {
  if (mode == RolloutMode::policy && policy == nullptr) {
    throw std::invalid_argument("evaluate_policy: policy mode requires a policy table");
  }
  if (q.n_states() != env.n_states() || q.n_actions() != env.n_actions()) {
    throw std::invalid_argument("evaluate_policy: Q-table is " + std::to_string(q.n_states()) + "x" +
                                std::to_string(q.n_actions()) + " but environment is " +
                                std::to_string(env.n_states()) + "x" + std::to_string(env.n_actions()));
  }
  if (policy && (policy->n_states() != env.n_states() || policy->n_actions() != env.n_actions())) {
    throw std::invalid_argument("evaluate_policy: policy table does not match environment");
  }
  const auto* quantum_env = dynamic_cast<const env::QuantumEnvironment*>(&env);

  Trajectory traj;
  std::size_t s = env.reset();
  for (;;) {
    std::size_t a = 0;
    if (mode == RolloutMode::greedy) {
      a = rl::greedy_action(q, s);
    } else {
      const auto row = policy->row(s);
      a = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    }
    const auto out = env.step(a);
    TrajectoryStep step{traj.steps.size() + 1, s, a, out.reward, out.fidelity, {}};
    if (quantum_env) {
      const auto amps = quantum_env->amplitudes();
      step.amplitudes.assign(amps.begin(), amps.end());
    }
    traj.steps.push_back(std::move(step));
    traj.terminal_fidelity = out.fidelity;
    s = out.next_state;
    if (out.terminal) {
      traj.success = out.success;
      traj.truncated = out.truncated;
      break;
    }
  }
  return traj;
}

rl::QTable value_iteration(const env::MdpTables& tables, double gamma, double tol, std::size_t max_iterations) {
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("value_iteration: gamma must lie in [0, 1)");
  if (!(tol > 0.0)) throw std::invalid_argument("value_iteration: tol must be positive");
  tables.validate(1e-9);
  const std::size_t n = tables.n_states;
  const std::size_t m = tables.n_actions;
  rl::QTable q(n, m);
  std::vector<double> v(n, 0.0);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    double delta = 0.0;
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t a = 0; a < m; ++a) {
        double expect = 0.0;
        for (std::size_t t = 0; t < n; ++t) expect += tables.p(s, a, t) * v[t];
        const double updated = tables.r(s, a) + gamma * expect;
        delta = std::max(delta, std::abs(updated - q(s, a)));
        q(s, a) = updated;
      }
    }
    for (std::size_t s = 0; s < n; ++s) v[s] = q.max_value(s);
    if (delta < tol) return q;
  }
  throw std::runtime_error("value_iteration: no convergence within iteration cap");
}

std::optional<double> median_with_missing(std::vector<std::optional<double>> values) {
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
  });
  const std::size_t n = values.size();
  const auto& lo = values[(n - 1) / 2];
  const auto& hi = values[n / 2];
  if (!lo || !hi) return std::nullopt;
  return 0.5 * (*lo + *hi);
}

std::vector<ComparisonRow> aggregate_runs(const std::vector<ComparisonRun>& runs) {
  std::map<std::string, std::vector<const ComparisonRun*>> by_strategy;
  std::vector<ComparisonRow> rows;
  for (const auto& r : runs)
    if (r.result) by_strategy[r.strategy].push_back(&r);
  for (const auto& [name, group] : by_strategy) {
    ComparisonRow row;
    row.strategy = name;
    row.seed_count = group.size();
    std::vector<std::optional<double>> conv;
    std::vector<std::optional<double>> steps;
    std::size_t successes = 0;
    for (const auto* r : group) {
      const auto& ce = r->result->convergence_episode;
      conv.push_back(ce ? std::optional<double>(static_cast<double>(*ce)) : std::nullopt);
      steps.push_back(static_cast<double>(r->result->total_steps));
      if (ce) ++successes;
    }
    row.median_convergence_episode = median_with_missing(conv);
    row.median_cumulative_steps = median_with_missing(steps).value_or(0.0);
    row.success_rate = static_cast<double>(successes) / static_cast<double>(group.size());
    rows.push_back(row);
  }
  return rows;
}

Comparison compare_strategies(const EnvFactory& factory, const std::vector<rl::StrategyConfig>& strategies,
                              const std::vector<std::uint64_t>& seeds, const TrainConfig& cfg, std::size_t jobs) {
  if (seeds.empty()) throw std::invalid_argument("compare_strategies: at least one seed is required");
  if (strategies.empty()) throw std::invalid_argument("compare_strategies: at least one strategy is required");
  struct Task {
    rl::StrategyConfig strategy;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& st : strategies)
    for (auto seed : seeds) tasks.push_back({st, seed});
  // Validate everything up front so no run starts on a bad configuration.
  for (const auto& t : tasks) {
    TrainConfig c = cfg;
    c.strategy = t.strategy;
    c.seed = t.seed;
    c.validate();
    std::unique_ptr<env::Environment> probe;
    try {
      probe = factory(t.seed);
    } catch (const std::exception&) {
      continue;  // reported by the run itself
    }
    check_compatible(*probe, c);
  }

  auto run_one = [&](const Task& t) {
    TrainConfig c = cfg;
    c.strategy = t.strategy;
    c.seed = t.seed;
    ComparisonRun run{std::string(rl::strategy_name(t.strategy.kind)), t.seed, std::nullopt, {}};
    try {
      auto env = factory(t.seed);
      run.result = train(*env, c);
    } catch (const std::exception& e) {
      run.error = e.what();
    }
    return run;
  };

  std::vector<std::optional<ComparisonRun>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) slots[i].emplace(run_one(tasks[i]));
  };
  const std::size_t n_workers = std::clamp<std::size_t>(jobs, 1, tasks.size());
  std::vector<std::future<void>> workers;
  for (std::size_t w = 0; w < n_workers; ++w) workers.push_back(std::async(std::launch::async, worker));
  for (auto& w : workers) w.get();

  Comparison out;
  for (auto& s : slots) out.runs.push_back(std::move(*s));
  std::stable_sort(out.runs.begin(), out.runs.end(), [](const auto& a, const auto& b) {
    return a.strategy != b.strategy ? a.strategy < b.strategy : a.seed < b.seed;
  });
  out.rows = aggregate_runs(out.runs);
  return out;
}

}  // namespace qsteer::train
