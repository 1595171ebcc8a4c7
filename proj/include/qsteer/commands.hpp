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
 * @file commands.hpp
 * @brief The run, compare, evaluate and landscape subcommands.
 *
 * Each command returns a process exit status and throws for configuration
 * or I/O errors. Output files are named from (strategy, seed) so repeated
 * invocations overwrite rather than accumulate.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "qsteer/config.hpp"
#include "qsteer/trainer.hpp"

namespace qsteer::commands {

struct Options {
  std::filesystem::path out_dir = "out";
  std::optional<std::uint64_t> seed;  // replaces the configured seed list
  std::size_t jobs = 1;
  bool quiet = false;
};

/// Output file stem for one run, e.g. "fpql_7".
std::string run_stem(std::string_view strategy, std::uint64_t seed);

/// One strategy, one seed: <stem>.csv, <stem>_summary.json, <stem>_artifact.json.
int cmd_run(const config::ExperimentConfig& cfg, const Options& opts, std::ostream& log);

/// Every (strategy, seed): <stem>.csv per run, aggregate.csv and compare_summary.json.
/// Needs two or more strategies unless allow_single is set. Returns 1 if any run failed.
int cmd_compare(const config::ExperimentConfig& cfg, const Options& opts, bool allow_single, std::ostream& log);

/// Roll out a saved artifact and write <stem>_trajectory.csv. The rollout mode defaults to the
/// one matching the artifact's strategy.
int cmd_evaluate(const config::ExperimentConfig& cfg, const std::filesystem::path& artifact, const Options& opts,
                 std::optional<train::RolloutMode> mode, std::ostream& log);

/// Print J and sqrt(J) for the configured initial and target states under a pulse sequence file.
int cmd_landscape(const config::ExperimentConfig& cfg, const std::filesystem::path& sequence, std::ostream& out);

}  // namespace qsteer::commands
