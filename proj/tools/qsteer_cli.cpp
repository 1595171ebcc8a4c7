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

// qsteer: train, compare and evaluate tabular learners on the quantum control tasks.
//
//   qsteer run      --config spin.cfg [--seed N] [--out DIR] [--section.key=value ...]
//   qsteer compare  --config spin.cfg [--jobs N] [--single]
//   qsteer evaluate --config spin.cfg --artifact out/fpql_1_artifact.json [--mode greedy|policy]
//   qsteer landscape --config lambda.cfg --sequence pulses.txt

#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "qsteer/commands.hpp"
#include "qsteer/config.hpp"

namespace {

std::string default_out_dir() {
  const char* env = std::getenv("QSTEER_OUT");
  return (env && *env) ? env : "out";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace qsteer;

  CLI::App app{"Tabular probabilistic Q-learning for quantum state control"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  bool quiet = false;
  app.add_option("--config", config_path, "Experiment configuration file")->required();
  auto* out_opt = app.add_option("--out", out_dir, "Output directory (default ./out, or $QSTEER_OUT)");
  auto* seed_opt = app.add_option("--seed", seed, "Run this seed instead of the configured list");
  app.add_option("--jobs", jobs, "Concurrent runs for compare")->check(CLI::PositiveNumber);
  app.add_flag("--quiet", quiet, "Suppress progress output");

  auto* run = app.add_subcommand("run", "Train one strategy on one seed");
  auto* compare = app.add_subcommand("compare", "Train every configured strategy on every seed");
  bool single = false;
  compare->add_flag("--single", single, "Allow a single strategy");
  auto* evaluate = app.add_subcommand("evaluate", "Roll out a trained artifact and write its trajectory");
  std::string artifact;
  std::string mode;
  evaluate->add_option("--artifact", artifact, "Artifact written by run")->required();
  evaluate->add_option("--mode", mode, "greedy or policy (default: by strategy)")
      ->check(CLI::IsMember({"greedy", "policy"}));
  auto* landscape = app.add_subcommand("landscape", "Evaluate J for a pulse sequence file");
  std::string sequence;
  landscape->add_option("--sequence", sequence, "One action index per line")->required();

  // Unmatched --section.key=value arguments are config overrides.
  app.allow_extras();
  for (auto* sub : {run, compare, evaluate, landscape}) sub->allow_extras();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    std::vector<config::Override> overrides;
    for (const auto& extra : app.remaining()) overrides.push_back(config::parse_override(extra));
    const auto cfg = config::parse_config(config_path, overrides);

    commands::Options opts;
    opts.out_dir = *out_opt ? out_dir : (!cfg.output_dir.empty() ? cfg.output_dir : default_out_dir());
    if (*seed_opt) opts.seed = seed;
    opts.jobs = jobs;
    opts.quiet = quiet;

    if (run->parsed()) return commands::cmd_run(cfg, opts, std::cerr);
    if (compare->parsed()) return commands::cmd_compare(cfg, opts, single, std::cerr);
    if (evaluate->parsed()) {
      std::optional<train::RolloutMode> m;
      if (mode == "greedy") m = train::RolloutMode::greedy;
      if (mode == "policy") m = train::RolloutMode::policy;
      return commands::cmd_evaluate(cfg, artifact, opts, m, std::cerr);
    }
    return commands::cmd_landscape(cfg, sequence, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
