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
 * @file config.hpp
 * @brief Experiment configuration: a flat INI dialect with defaults filled in.
 *
 * Sections are [environment], [training], [strategies], [seeds], [output]
 * and the optional [environment_change]. Lines are `key = value`; `#` and
 * `;` start comments. Angles accept plain reals or multiples of pi such as
 * `41*pi/60`. Every key not understood for the chosen environment kind is
 * an error.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsteer/environment.hpp"
#include "qsteer/lambda_env.hpp"
#include "qsteer/spin_env.hpp"
#include "qsteer/trainer.hpp"

namespace qsteer::config {

/// Raised for every configuration problem; the message names the offending key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EnvKind { spin_half, lambda, random_mdp };
std::string_view env_kind_name(EnvKind kind);

struct RandomMdpConfig {
  std::size_t n_states = 6;
  std::size_t n_actions = 3;
  std::uint64_t mdp_seed = 42;
  std::size_t step_cap = 1000;
};

/// Mid-run retarget. Spin targets are Bloch angles, lambda targets a basis level.
struct EnvironmentChange {
  std::optional<std::size_t> episode;
  bool at_convergence = false;
  std::optional<quantum::BlochAngles> target_angles;
  std::optional<std::size_t> target_level;
};

/// One `section.key = value` assignment from the command line.
struct Override {
  std::string section;
  std::string key;
  std::string value;
};

/// Ordered (section, [(key, value)]) view of a fully-resolved config.
using Echo = std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>;

struct ExperimentConfig {
  EnvKind kind = EnvKind::spin_half;
  env::SpinHalfEnvConfig spin;
  env::LambdaEnvConfig lambda;
  RandomMdpConfig mdp;
  train::TrainConfig training;
  std::vector<rl::StrategyConfig> strategies;
  std::vector<std::uint64_t> seeds;
  std::string output_dir;  // empty: use the command-line default
  std::optional<EnvironmentChange> change;
  std::vector<std::string> overrides;  // "section.key=value" in application order

  /// Every setting with defaults filled; reals use 17 significant digits.
  Echo echo() const;
  /// echo() rendered as INI text that parses back to the same configuration.
  std::string to_ini() const;
};

ExperimentConfig parse_config(const std::filesystem::path& path, const std::vector<Override>& overrides = {});
ExperimentConfig parse_config_text(std::string_view text, const std::vector<Override>& overrides = {},
                                   std::string_view source = "<string>");

/// Parse `section.key=value` (leading dashes allowed).
Override parse_override(std::string_view arg);

std::unique_ptr<env::Environment> make_environment(const ExperimentConfig& cfg);

/// Training settings for one (strategy, seed) run, including the retarget if configured.
train::TrainConfig train_config_for(const ExperimentConfig& cfg, const rl::StrategyConfig& strategy,
                                    std::uint64_t seed);

/// Locale-independent shortest-round-trip-safe rendering with 17 significant digits.
std::string format_real(double v);

}  // namespace qsteer::config
