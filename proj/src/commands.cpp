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

#include "qsteer/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qsteer/io.hpp"

namespace qsteer::commands {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory '" + dir.string() + "'" +
                             (ec ? ": " + ec.message() : std::string()));
  }
}

void report_schedule(const config::ExperimentConfig& cfg, const Options& opts, std::ostream& log) {
  if (opts.quiet) return;
  const auto rm = train::check_robbins_monro(cfg.training.alpha);
  if (rm.verdict != train::Verdict::pass) {
    log << "warning: learning rate " << cfg.training.alpha.describe() << ": " << rm.message << "\n";
  }
}

std::string describe_fidelity(const std::optional<double>& f) {
  return f ? config::format_real(*f) : std::string("n/a");
}

}  // namespace

std::string run_stem(std::string_view strategy, std::uint64_t seed) {
  return std::string(strategy) + "_" + std::to_string(seed);
}

int cmd_run(const config::ExperimentConfig& cfg, const Options& opts, std::ostream& log) {
  if (cfg.strategies.size() != 1) {
    throw config::ConfigError("run takes exactly one strategy but [strategies] list names " +
                              std::to_string(cfg.strategies.size()) +
                              "; use compare or override with --strategies.list=<name>");
  }
  const auto& strategy = cfg.strategies.front();
  const std::uint64_t seed = opts.seed.value_or(cfg.seeds.front());
  const auto name = rl::strategy_name(strategy.kind);
  const auto tcfg = config::train_config_for(cfg, strategy, seed);
  tcfg.validate();
  auto env = config::make_environment(cfg);
  train::check_compatible(*env, tcfg);
  report_schedule(cfg, opts, log);
  ensure_dir(opts.out_dir);

  const auto result = train::train(*env, tcfg);
  auto eval_env = config::make_environment(cfg);
  if (result.change_episode) {
    env::set_target(*eval_env, tcfg.target_change->target);
  }
  const auto rollout =
      train::evaluate_policy(*eval_env, result.q, train::default_rollout_mode(strategy.kind), &result.policy);

  const std::string stem = run_stem(name, seed);
  std::ostringstream csv;
  io::write_run_csv(csv, result.records);
  io::write_file(opts.out_dir / (stem + ".csv"), csv.str());
  io::write_file(opts.out_dir / (stem + "_summary.json"),
                 io::run_summary_json(cfg, name, seed, result, rollout).dump(2) + "\n");
  io::write_file(opts.out_dir / (stem + "_artifact.json"),
                 io::artifact_json(cfg, name, seed, result.q, result.policy).dump() + "\n");

  if (!opts.quiet) {
    log << name << " seed " << seed << ": " << result.records.size() << " episodes, convergence "
        << (result.convergence_episode ? std::to_string(*result.convergence_episode) : std::string("none"))
        << ", final rollout " << rollout.steps.size() << " steps, fidelity "
        << describe_fidelity(rollout.terminal_fidelity) << "\n";
  }
  return 0;
}

int cmd_compare(const config::ExperimentConfig& cfg, const Options& opts, bool allow_single, std::ostream& log) {
  if (cfg.strategies.size() < 2 && !allow_single) {
    throw config::ConfigError("compare needs at least two strategies in [strategies] list (or --single)");
  }
  std::vector<std::uint64_t> seeds = cfg.seeds;
  if (opts.seed) seeds = {*opts.seed};
  const auto base = config::train_config_for(cfg, cfg.strategies.front(), seeds.front());
  report_schedule(cfg, opts, log);
  ensure_dir(opts.out_dir);

  const train::EnvFactory factory = [&cfg](std::uint64_t) { return config::make_environment(cfg); };
  const auto cmp = train::compare_strategies(factory, cfg.strategies, seeds, base, opts.jobs);

  io::json runs = io::json::array();
  bool failed = false;
  for (const auto& run : cmp.runs) {
    io::json entry{{"strategy", run.strategy}, {"seed", run.seed}};
    if (!run.result) {
      failed = true;
      entry["status"] = "failed";
      entry["error"] = run.error;
      if (!opts.quiet) log << "error: " << run.strategy << " seed " << run.seed << ": " << run.error << "\n";
    } else {
      std::ostringstream csv;
      io::write_run_csv(csv, run.result->records);
      io::write_file(opts.out_dir / (run_stem(run.strategy, run.seed) + ".csv"), csv.str());
      entry["status"] = "ok";
      entry["convergence_episode"] =
          run.result->convergence_episode ? io::json(*run.result->convergence_episode) : io::json(nullptr);
      entry["total_steps"] = run.result->total_steps;
      entry["wall_time"] = run.result->wall_time;
    }
    runs.push_back(entry);
  }
  std::ostringstream agg;
  io::write_aggregate_csv(agg, cmp.rows);
  io::write_file(opts.out_dir / "aggregate.csv", agg.str());
  io::json summary{{"runs", runs}, {"config", io::config_echo_json(cfg)}, {"status", failed ? "partial" : "ok"}};
  io::write_file(opts.out_dir / "compare_summary.json", summary.dump(2) + "\n");

  if (!opts.quiet) {
    for (const auto& row : cmp.rows) {
      log << row.strategy << ": seeds " << row.seed_count << ", median convergence "
          << (row.median_convergence_episode ? config::format_real(*row.median_convergence_episode)
                                             : std::string("none"))
          << ", success rate " << config::format_real(row.success_rate) << "\n";
    }
  }
  return failed ? 1 : 0;
}

int cmd_evaluate(const config::ExperimentConfig& cfg, const fs::path& artifact_path, const Options& opts,
                 std::optional<train::RolloutMode> mode, std::ostream& log) {
  const auto artifact = io::read_artifact(artifact_path);
  auto env = config::make_environment(cfg);
  if (artifact.q.n_states() != env->n_states() || artifact.q.n_actions() != env->n_actions()) {
    throw std::runtime_error("artifact '" + artifact_path.string() + "' holds " +
                             std::to_string(artifact.q.n_states()) + "x" + std::to_string(artifact.q.n_actions()) +
                             " tables but environment " + std::string(config::env_kind_name(cfg.kind)) + " is " +
                             std::to_string(env->n_states()) + "x" + std::to_string(env->n_actions()));
  }
  const auto chosen = mode.value_or(train::default_rollout_mode(rl::parse_strategy(artifact.strategy)));
  const auto traj = train::evaluate_policy(*env, artifact.q, chosen, &artifact.policy);
  ensure_dir(opts.out_dir);
  std::ostringstream csv;
  io::write_trajectory_csv(csv, traj, cfg.kind);
  const auto path = opts.out_dir / (run_stem(artifact.strategy, artifact.seed) + "_trajectory.csv");
  io::write_file(path, csv.str());
  if (!opts.quiet) {
    log << "rollout: " << traj.steps.size() << " steps, " << (traj.success ? "success" : "no success")
        << ", terminal fidelity " << describe_fidelity(traj.terminal_fidelity) << "\n"
        << "wrote " << path.string() << "\n";
  }
  return 0;
}

int cmd_landscape(const config::ExperimentConfig& cfg, const fs::path& sequence_path, std::ostream& out) {
  auto env = config::make_environment(cfg);
  const auto* qenv = dynamic_cast<const env::QuantumEnvironment*>(env.get());
  if (qenv == nullptr) {
    throw config::ConfigError("landscape needs a quantum environment; " +
                              std::string(config::env_kind_name(cfg.kind)) + " has no initial or target state");
  }
  std::ifstream in(sequence_path);
  if (!in) throw std::runtime_error("cannot open pulse sequence '" + sequence_path.string() + "'");
  std::vector<std::size_t> actions;
  try {
    actions = io::read_pulse_sequence(in, env->n_actions());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(sequence_path.string() + ": " + e.what());
  }
  const auto props = qenv->propagators();
  std::vector<quantum::Propagator> seq;
  seq.reserve(actions.size());
  for (auto a : actions) seq.push_back(props[a]);
  const double j = quantum::transition_landscape(seq, qenv->initial_state(), qenv->target_state());
  out << "pulses " << actions.size() << "\n"
      << "J " << config::format_real(j) << "\n"
      << "fidelity " << config::format_real(std::sqrt(j)) << "\n";
  return 0;
}

}  // namespace qsteer::commands
