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
 * @file io.hpp
 * @brief CSV and JSON serializers for runs, comparisons, trajectories and
 *        trained-table artifacts.
 *
 * CSV output is byte-stable: '.' decimal point, 17 significant digits,
 * LF line endings, header always present.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qsteer/config.hpp"
#include "qsteer/trainer.hpp"

namespace qsteer::io {

using json = nlohmann::ordered_json;

void write_run_csv(std::ostream& out, const std::vector<train::EpisodeRecord>& records);

void write_aggregate_csv(std::ostream& out, const std::vector<train::ComparisonRow>& rows);

/// step,action,reward,fidelity,re_c1,im_c1,... then theta,phi (spin) or pop_1..pop_N (lambda).
void write_trajectory_csv(std::ostream& out, const train::Trajectory& traj, config::EnvKind kind);

json config_echo_json(const config::ExperimentConfig& cfg);

/// Inverse of config_echo_json; the result parses back to the same configuration.
std::string config_echo_to_ini(const json& echo);

json run_summary_json(const config::ExperimentConfig& cfg, std::string_view strategy, std::uint64_t seed,
                      const train::RunResult& result, const train::Trajectory& final_rollout);

struct Artifact {
  std::string strategy;
  std::uint64_t seed = 0;
  rl::QTable q;
  rl::PolicyTable policy;
  json config;
};

json artifact_json(const config::ExperimentConfig& cfg, std::string_view strategy, std::uint64_t seed,
                   const rl::QTable& q, const rl::PolicyTable& policy);

/// Throws std::runtime_error on malformed documents or inconsistent table sizes.
Artifact parse_artifact(const json& doc);
Artifact read_artifact(const std::filesystem::path& path);

/// Action indices, one per line; blank lines and '#' comments are skipped.
/// Throws std::runtime_error naming the line for anything not in [0, n_actions).
std::vector<std::size_t> read_pulse_sequence(std::istream& in, std::size_t n_actions);

/// Write a whole file or throw std::runtime_error naming the path.
void write_file(const std::filesystem::path& path, const std::string& contents);

/// Render a real the way every CSV column does.
std::string csv_real(double v);

}  // namespace qsteer::io
