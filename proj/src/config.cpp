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

#include "qsteer/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>

#include "qsteer/random_mdp.hpp"

namespace qsteer::config {

namespace {

constexpr std::array<std::string_view, 6> kSections = {"environment", "training", "strategies",
                                                       "seeds",       "output",   "environment_change"};

struct RawValue {
  std::string value;
  std::string where;  // "file:line" or "command line"
  bool used = false;
};

using RawSection = std::map<std::string, RawValue>;
using RawConfig = std::map<std::string, RawSection>;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool known_section(std::string_view name) {
  return std::find(kSections.begin(), kSections.end(), name) != kSections.end();
}

RawConfig lex(std::string_view text, std::string_view source) {
  RawConfig raw;
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    const std::string where = std::string(source) + ":" + std::to_string(line_no);
    if (const auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError(where + ": unterminated section header '" + t + "'");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      if (!known_section(section)) throw ConfigError(where + ": unknown section [" + section + "]");
      raw[section];
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value' or '[section]', got '" + t + "'");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string value = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": missing key before '='");
    if (section.empty()) throw ConfigError(where + ": key '" + key + "' appears before any [section]");
    auto& sec = raw[section];
    if (sec.count(key)) {
      throw ConfigError(where + ": duplicate key '" + key + "' in [" + section + "] (first at " + sec[key].where +
                        ")");
    }
    sec[key] = RawValue{value, where, false};
  }
  return raw;
}

/// Hands out typed values and remembers which keys were consumed.
class Reader {
 public:
  explicit Reader(RawConfig& raw) : raw_(raw) {}

  bool has(const std::string& section, const std::string& key) const {
    auto s = raw_.find(section);
    return s != raw_.end() && s->second.count(key);
  }
  bool has_section(const std::string& section) const { return raw_.count(section) > 0; }

  const RawValue* get(const std::string& section, const std::string& key) {
    auto s = raw_.find(section);
    if (s == raw_.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    k->second.used = true;
    return &k->second;
  }

  [[noreturn]] static void fail(const std::string& section, const std::string& key, const RawValue& v,
                                const std::string& why) {
    throw ConfigError(v.where + ": [" + section + "] " + key + " = '" + v.value + "': " + why);
  }

  double real(const std::string& section, const std::string& key, double fallback) {
    const RawValue* v = get(section, key);
    if (!v) return fallback;
    const auto parsed = parse_real(v->value);
    if (!parsed) fail(section, key, *v, "expected a real number");
    return *parsed;
  }

  double angle(const std::string& section, const std::string& key, double fallback) {
    const RawValue* v = get(section, key);
    if (!v) return fallback;
    const auto parsed = parse_angle(v->value);
    if (!parsed) fail(section, key, *v, "expected a real number or a multiple of pi such as 41*pi/60");
    return *parsed;
  }

  std::uint64_t integer(const std::string& section, const std::string& key, std::uint64_t fallback) {
    const RawValue* v = get(section, key);
    if (!v) return fallback;
    const auto parsed = parse_uint(v->value);
    if (!parsed) fail(section, key, *v, "expected a non-negative integer");
    return *parsed;
  }

  std::string word(const std::string& section, const std::string& key, std::string fallback) {
    const RawValue* v = get(section, key);
    return v ? v->value : fallback;
  }

  void reject_unused() const {
    for (const auto& [section, keys] : raw_) {
      for (const auto& [key, v] : keys) {
        if (!v.used) throw ConfigError(v.where + ": unknown key '" + key + "' in [" + section + "]");
      }
    }
  }

  static std::optional<double> parse_real(std::string_view s) {
    double out = 0.0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, out);
    if (ec != std::errc() || p != end || !std::isfinite(out)) return std::nullopt;
    return out;
  }

  static std::optional<double> parse_angle(const std::string& s) {
    if (auto plain = parse_real(s)) return plain;
    static const std::regex re(R"(^\s*(?:([0-9.eE+\-]+)\s*\*?\s*)?pi\s*(?:/\s*([0-9.eE+\-]+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) return std::nullopt;
    double num = 1.0;
    double den = 1.0;
    if (m[1].matched) {
      auto v = parse_real(m[1].str());
      if (!v) return std::nullopt;
      num = *v;
    }
    if (m[2].matched) {
      auto v = parse_real(m[2].str());
      if (!v || *v == 0.0) return std::nullopt;
      den = *v;
    }
    return num * std::numbers::pi / den;
  }

  static std::optional<std::uint64_t> parse_uint(std::string_view s) {
    std::uint64_t out = 0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, out);
    if (ec != std::errc() || p != end) return std::nullopt;
    return out;
  }

 private:
  RawConfig& raw_;
};

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string item;
  for (char c : s) {
    if (c == ',' || c == ' ' || c == '\t') {
      if (!item.empty()) out.push_back(std::move(item));
      item.clear();
    } else {
      item.push_back(c);
    }
  }
  if (!item.empty()) out.push_back(std::move(item));
  return out;
}

/// "1, 2, 5..8" -> {1, 2, 5, 6, 7, 8}
std::vector<std::uint64_t> parse_seed_list(const RawValue& v) {
  std::vector<std::uint64_t> seeds;
  for (const auto& item : split_list(v.value)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      auto s = Reader::parse_uint(item);
      if (!s) Reader::fail("seeds", "list", v, "'" + item + "' is not a non-negative integer");
      seeds.push_back(*s);
      continue;
    }
    auto lo = Reader::parse_uint(std::string_view(item).substr(0, dots));
    auto hi = Reader::parse_uint(std::string_view(item).substr(dots + 2));
    if (!lo || !hi || *lo > *hi) Reader::fail("seeds", "list", v, "'" + item + "' is not a range lo..hi");
    if (*hi - *lo >= 100000) Reader::fail("seeds", "list", v, "range '" + item + "' is too long");
    for (auto s = *lo; s <= *hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) Reader::fail("seeds", "list", v, "at least one seed is required");
  return seeds;
}

/// Run a validator and rethrow its message as a ConfigError naming section.key.
template <typename F>
void checked(const std::string& section, const std::string& key, Reader& r, F&& f) {
  try {
    f();
  } catch (const std::invalid_argument& e) {
    const RawValue* v = r.get(section, key);
    if (v) Reader::fail(section, key, *v, e.what());
    throw ConfigError("[" + section + "] " + key + " (default): " + e.what());
  }
}

void require_range(Reader& r, const std::string& section, const std::string& key, bool ok,
                   const std::string& why) {
  if (ok) return;
  const RawValue* v = r.get(section, key);
  if (v) Reader::fail(section, key, *v, why);
  throw ConfigError("[" + section + "] " + key + ": " + why);
}

ExperimentConfig build(RawConfig& raw, std::vector<std::string> overrides_applied) {
  Reader r(raw);

  std::vector<std::string> missing;
  for (const auto& [section, key] : std::array<std::pair<const char*, const char*>, 3>{
           {{"environment", "kind"}, {"strategies", "list"}, {"seeds", "list"}}}) {
    if (!r.has(section, key)) missing.push_back(std::string("[") + section + "] " + key);
  }
  if (!missing.empty()) {
    std::string msg = "missing required keys:";
    for (const auto& m : missing) msg += " " + m + ",";
    msg.pop_back();
    throw ConfigError(msg);
  }

  ExperimentConfig cfg;
  cfg.overrides = std::move(overrides_applied);

  const RawValue* kind = r.get("environment", "kind");
  if (kind->value == "spin_half") {
    cfg.kind = EnvKind::spin_half;
  } else if (kind->value == "lambda") {
    cfg.kind = EnvKind::lambda;
  } else if (kind->value == "random_mdp") {
    cfg.kind = EnvKind::random_mdp;
  } else {
    Reader::fail("environment", "kind", *kind, "expected spin_half, lambda or random_mdp");
  }

  const std::string E = "environment";
  switch (cfg.kind) {
    case EnvKind::spin_half: {
      auto& s = cfg.spin;
      s.theta_bins = r.integer(E, "theta_bins", s.theta_bins);
      s.phi_bins = r.integer(E, "phi_bins", s.phi_bins);
      s.initial.theta = r.angle(E, "initial_theta", s.initial.theta);
      s.initial.phi = r.angle(E, "initial_phi", s.initial.phi);
      s.target.theta = r.angle(E, "target_theta", s.target.theta);
      s.target.phi = r.angle(E, "target_phi", s.target.phi);
      s.success_fidelity = r.real(E, "success_fidelity", s.success_fidelity);
      s.step_cap = r.integer(E, "step_cap", s.step_cap);
      s.step_reward = r.real(E, "step_reward", s.step_reward);
      s.goal_reward = r.real(E, "goal_reward", s.goal_reward);
      require_range(r, E, "theta_bins", s.theta_bins >= 2, "must be >= 2");
      require_range(r, E, "phi_bins", s.phi_bins >= 2, "must be >= 2");
      require_range(r, E, "step_cap", s.step_cap >= 1, "must be >= 1");
      require_range(r, E, "success_fidelity", s.success_fidelity > 0.0 && s.success_fidelity <= 1.0,
                    "must lie in (0, 1]");
      for (const char* key : {"initial_theta", "target_theta"}) {
        const double v = std::string(key) == "initial_theta" ? s.initial.theta : s.target.theta;
        require_range(r, E, key, v >= 0.0 && v <= std::numbers::pi, "must lie in [0, pi]");
      }
      for (const char* key : {"initial_phi", "target_phi"}) {
        const double v = std::string(key) == "initial_phi" ? s.initial.phi : s.target.phi;
        require_range(r, E, key, v >= 0.0 && v < 2.0 * std::numbers::pi, "must lie in [0, 2*pi)");
      }
      break;
    }
    case EnvKind::lambda: {
      auto& l = cfg.lambda;
      l.horizon = r.integer(E, "horizon", l.horizon);
      const auto bound = r.integer(E, "pulse_bound", static_cast<std::uint64_t>(l.pulse_amplitudes));
      require_range(r, E, "pulse_bound", bound >= 1 && bound <= 10000, "must lie in [1, 10000]");
      l.pulse_amplitudes = static_cast<int>(bound);
      l.dt = r.real(E, "dt", l.dt);
      l.coupling = r.real(E, "coupling", l.coupling);
      l.success_fidelity = r.real(E, "success_fidelity", l.success_fidelity);
      l.goal_reward = r.real(E, "goal_reward", l.goal_reward);
      const std::string mode = r.word(E, "reward_mode", "binary");
      if (mode == "binary") {
        l.reward_mode = env::LambdaRewardMode::binary;
      } else if (mode == "fidelity_squared") {
        l.reward_mode = env::LambdaRewardMode::fidelity_squared;
      } else {
        Reader::fail(E, "reward_mode", *r.get(E, "reward_mode"), "expected binary or fidelity_squared");
      }
      const auto initial_level = r.integer(E, "initial_level", 0);
      const auto target_level = r.integer(E, "target_level", 2);
      require_range(r, E, "initial_level", initial_level < 3, "must be 0, 1 or 2");
      require_range(r, E, "target_level", target_level < 3, "must be 0, 1 or 2");
      l.initial = quantum::QuantumState::basis(3, initial_level);
      l.target = quantum::QuantumState::basis(3, target_level);
      require_range(r, E, "horizon", l.horizon >= 1, "must be >= 1");
      require_range(r, E, "dt", l.dt > 0.0, "must be positive");
      require_range(r, E, "success_fidelity", l.success_fidelity > 0.0 && l.success_fidelity <= 1.0,
                    "must lie in (0, 1]");
      break;
    }
    case EnvKind::random_mdp: {
      auto& m = cfg.mdp;
      m.n_states = r.integer(E, "n_states", m.n_states);
      m.n_actions = r.integer(E, "n_actions", m.n_actions);
      m.mdp_seed = r.integer(E, "mdp_seed", m.mdp_seed);
      m.step_cap = r.integer(E, "step_cap", m.step_cap);
      require_range(r, E, "n_states", m.n_states >= 2 && m.n_states <= 100000, "must lie in [2, 100000]");
      require_range(r, E, "n_actions", m.n_actions >= 2 && m.n_actions <= 1000, "must lie in [2, 1000]");
      require_range(r, E, "step_cap", m.step_cap >= 1, "must be >= 1");
      break;
    }
  }

  const std::string T = "training";
  auto& t = cfg.training;
  const bool fidelity_metric_default = cfg.kind == EnvKind::lambda;
  const std::string schedule = r.word(T, "alpha_schedule", "constant");
  const double alpha = r.real(T, "alpha", 0.01);
  const double exponent = r.real(T, "alpha_exponent", 1.0);
  checked(T, "alpha_schedule", r, [&] { t.alpha = train::parse_schedule(schedule, alpha, exponent); });
  checked(T, "alpha", r, [&] { t.alpha.validate(); });
  t.gamma = r.real(T, "gamma", t.gamma);
  require_range(r, T, "gamma", t.gamma >= 0.0 && t.gamma < 1.0,
                "gamma must lie in [0, 1); the Q-learning convergence conditions require a discount below 1");
  t.max_episodes = r.integer(T, "max_episodes", t.max_episodes);
  t.step_cap = r.integer(T, "step_cap", t.step_cap);
  require_range(r, T, "step_cap", t.step_cap >= 1, "must be >= 1");
  t.convergence_window = r.integer(T, "convergence_window", t.convergence_window);
  require_range(r, T, "convergence_window", t.convergence_window >= 1, "must be >= 1");
  t.convergence_tolerance = r.real(T, "convergence_tolerance", fidelity_metric_default ? 0.01 : 0.0);
  require_range(r, T, "convergence_tolerance", t.convergence_tolerance >= 0.0, "must be >= 0");
  const std::string metric = r.word(T, "convergence_metric", fidelity_metric_default ? "fidelity" : "steps");
  if (metric == "steps") {
    t.metric = train::ConvergenceMetric::steps;
  } else if (metric == "fidelity") {
    t.metric = train::ConvergenceMetric::fidelity;
  } else {
    Reader::fail(T, "convergence_metric", *r.get(T, "convergence_metric"), "expected steps or fidelity");
  }
  t.p_min = r.real(T, "p_min", t.p_min);
  require_range(r, T, "p_min", t.p_min >= 0.0 && t.p_min < 0.01, "must lie in [0, 0.01)");

  rl::StrategyConfig base;
  base.epsilon = r.real(T, "epsilon", base.epsilon);
  base.tau = r.real(T, "tau", base.tau);
  base.k = r.real(T, "k", base.k);
  require_range(r, T, "epsilon", base.epsilon >= 0.0 && base.epsilon < 1.0, "must lie in [0, 1)");
  require_range(r, T, "tau", base.tau > 0.0, "must be positive");
  require_range(r, T, "k", base.k >= 0.0, "must be >= 0");

  const RawValue* list = r.get("strategies", "list");
  for (const auto& name : split_list(list->value)) {
    rl::StrategyConfig s = base;
    try {
      s.kind = rl::parse_strategy(name);
    } catch (const std::invalid_argument& e) {
      Reader::fail("strategies", "list", *list, e.what());
    }
    for (const auto& prev : cfg.strategies) {
      if (prev.kind == s.kind) Reader::fail("strategies", "list", *list, "strategy '" + name + "' listed twice");
    }
    cfg.strategies.push_back(s);
  }
  if (cfg.strategies.empty()) Reader::fail("strategies", "list", *list, "at least one strategy is required");
  const bool fidelity_env = cfg.kind != EnvKind::random_mdp;
  for (const auto& s : cfg.strategies) {
    if (s.kind == rl::StrategyKind::fidelity_probabilistic && !fidelity_env) {
      Reader::fail("strategies", "list", *list, "fpql needs a fidelity signal; random_mdp has none");
    }
  }

  cfg.seeds = parse_seed_list(*r.get("seeds", "list"));
  cfg.output_dir = r.word("output", "dir", "");

  if (r.has_section("environment_change")) {
    const std::string C = "environment_change";
    if (cfg.kind == EnvKind::random_mdp) {
      throw ConfigError("[environment_change] requires a quantum environment; random_mdp has no target");
    }
    EnvironmentChange ch;
    const RawValue* when = r.get(C, "episode");
    if (!when) throw ConfigError("missing required keys: [environment_change] episode");
    if (when->value == "converged") {
      ch.at_convergence = true;
    } else if (auto e = Reader::parse_uint(when->value)) {
      ch.episode = *e;
    } else {
      Reader::fail(C, "episode", *when, "expected an episode index or 'converged'");
    }
    if (cfg.kind == EnvKind::spin_half) {
      if (!r.has(C, "target_theta") || !r.has(C, "target_phi")) {
        throw ConfigError("missing required keys: [environment_change] target_theta, target_phi");
      }
      quantum::BlochAngles a{r.angle(C, "target_theta", 0.0), r.angle(C, "target_phi", 0.0)};
      require_range(r, C, "target_theta", a.theta >= 0.0 && a.theta <= std::numbers::pi, "must lie in [0, pi]");
      require_range(r, C, "target_phi", a.phi >= 0.0 && a.phi < 2.0 * std::numbers::pi, "must lie in [0, 2*pi)");
      ch.target_angles = a;
    } else {
      if (!r.has(C, "target_level")) throw ConfigError("missing required keys: [environment_change] target_level");
      ch.target_level = r.integer(C, "target_level", 0);
      require_range(r, C, "target_level", *ch.target_level < 3, "must be 0, 1 or 2");
    }
    cfg.change = ch;
  }

  r.reject_unused();
  return cfg;
}

}  // namespace

std::string_view env_kind_name(EnvKind kind) {
  switch (kind) {
    case EnvKind::spin_half: return "spin_half";
    case EnvKind::lambda: return "lambda";
    case EnvKind::random_mdp: return "random_mdp";
  }
  return "unknown";
}

std::string format_real(double v) {
  std::array<char, 64> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
  if (ec != std::errc()) throw std::runtime_error("format_real: conversion failed");
  return std::string(buf.data(), p);
}

Override parse_override(std::string_view arg) {
  std::string_view s = arg;
  while (!s.empty() && s.front() == '-') s.remove_prefix(1);
  const auto eq = s.find('=');
  const auto dot = s.find('.');
  if (eq == std::string_view::npos || dot == std::string_view::npos || dot > eq || dot == 0 || dot + 1 == eq) {
    throw ConfigError("override '" + std::string(arg) + "' is not of the form --section.key=value");
  }
  Override o{std::string(s.substr(0, dot)), std::string(s.substr(dot + 1, eq - dot - 1)),
             trim(s.substr(eq + 1))};
  if (!known_section(o.section)) throw ConfigError("override '" + std::string(arg) + "': unknown section [" + o.section + "]");
  return o;
}

ExperimentConfig parse_config_text(std::string_view text, const std::vector<Override>& overrides,
                                   std::string_view source) {
  RawConfig raw = lex(text, source);
  std::vector<std::string> applied;
  for (const auto& o : overrides) {
    if (!known_section(o.section)) throw ConfigError("override: unknown section [" + o.section + "]");
    raw[o.section][o.key] = RawValue{o.value, "command line (--" + o.section + "." + o.key + ")", false};
    applied.push_back(o.section + "." + o.key + "=" + o.value);
  }
  return build(raw, std::move(applied));
}

ExperimentConfig parse_config(const std::filesystem::path& path, const std::vector<Override>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), overrides, path.string());
}

Echo ExperimentConfig::echo() const {
  Echo out;
  std::vector<std::pair<std::string, std::string>> env{{"kind", std::string(env_kind_name(kind))}};
  switch (kind) {
    case EnvKind::spin_half:
      env.insert(env.end(), {{"theta_bins", std::to_string(spin.theta_bins)},
                             {"phi_bins", std::to_string(spin.phi_bins)},
                             {"initial_theta", format_real(spin.initial.theta)},
                             {"initial_phi", format_real(spin.initial.phi)},
                             {"target_theta", format_real(spin.target.theta)},
                             {"target_phi", format_real(spin.target.phi)},
                             {"success_fidelity", format_real(spin.success_fidelity)},
                             {"step_cap", std::to_string(spin.step_cap)},
                             {"step_reward", format_real(spin.step_reward)},
                             {"goal_reward", format_real(spin.goal_reward)}});
      break;
    case EnvKind::lambda: {
      auto level = [](const quantum::QuantumState& s) {
        for (std::size_t i = 0; i < s.dim(); ++i)
          if (std::abs(s[i]) > 0.5) return i;
        return std::size_t{0};
      };
      env.insert(env.end(), {{"horizon", std::to_string(lambda.horizon)},
                             {"pulse_bound", std::to_string(lambda.pulse_amplitudes)},
                             {"dt", format_real(lambda.dt)},
                             {"coupling", format_real(lambda.coupling)},
                             {"success_fidelity", format_real(lambda.success_fidelity)},
                             {"goal_reward", format_real(lambda.goal_reward)},
                             {"reward_mode", lambda.reward_mode == env::LambdaRewardMode::binary ? "binary"
                                                                                                 : "fidelity_squared"},
                             {"initial_level", std::to_string(level(lambda.initial))},
                             {"target_level", std::to_string(level(lambda.target))}});
      break;
    }
    case EnvKind::random_mdp:
      env.insert(env.end(), {{"n_states", std::to_string(mdp.n_states)},
                             {"n_actions", std::to_string(mdp.n_actions)},
                             {"mdp_seed", std::to_string(mdp.mdp_seed)},
                             {"step_cap", std::to_string(mdp.step_cap)}});
      break;
  }
  out.emplace_back("environment", std::move(env));

  const rl::StrategyConfig base = strategies.empty() ? rl::StrategyConfig{} : strategies.front();
  out.emplace_back("training", std::vector<std::pair<std::string, std::string>>{
                                   {"alpha_schedule", std::string(train::schedule_name(training.alpha.kind))},
                                   {"alpha", format_real(training.alpha.scale)},
                                   {"alpha_exponent", format_real(training.alpha.exponent)},
                                   {"gamma", format_real(training.gamma)},
                                   {"max_episodes", std::to_string(training.max_episodes)},
                                   {"step_cap", std::to_string(training.step_cap)},
                                   {"convergence_window", std::to_string(training.convergence_window)},
                                   {"convergence_tolerance", format_real(training.convergence_tolerance)},
                                   {"convergence_metric",
                                    training.metric == train::ConvergenceMetric::steps ? "steps" : "fidelity"},
                                   {"p_min", format_real(training.p_min)},
                                   {"epsilon", format_real(base.epsilon)},
                                   {"tau", format_real(base.tau)},
                                   {"k", format_real(base.k)}});

  std::string names;
  for (const auto& s : strategies) names += (names.empty() ? "" : ", ") + std::string(rl::strategy_name(s.kind));
  out.emplace_back("strategies", std::vector<std::pair<std::string, std::string>>{{"list", names}});
  std::string seed_list;
  for (auto s : seeds) seed_list += (seed_list.empty() ? "" : ", ") + std::to_string(s);
  out.emplace_back("seeds", std::vector<std::pair<std::string, std::string>>{{"list", seed_list}});
  if (!output_dir.empty()) {
    out.emplace_back("output", std::vector<std::pair<std::string, std::string>>{{"dir", output_dir}});
  }
  if (change) {
    std::vector<std::pair<std::string, std::string>> c{
        {"episode", change->at_convergence ? "converged" : std::to_string(change->episode.value_or(0))}};
    if (change->target_angles) {
      c.emplace_back("target_theta", format_real(change->target_angles->theta));
      c.emplace_back("target_phi", format_real(change->target_angles->phi));
    }
    if (change->target_level) c.emplace_back("target_level", std::to_string(*change->target_level));
    out.emplace_back("environment_change", std::move(c));
  }
  return out;
}

std::string ExperimentConfig::to_ini() const {
  std::string out;
  for (const auto& [section, keys] : echo()) {
    if (!out.empty()) out += "\n";
    out += "[" + section + "]\n";
    for (const auto& [k, v] : keys) out += k + " = " + v + "\n";
  }
  return out;
}

std::unique_ptr<env::Environment> make_environment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case EnvKind::spin_half: return std::make_unique<env::SpinHalfEnv>(cfg.spin);
    case EnvKind::lambda: return std::make_unique<env::LambdaEnv>(cfg.lambda);
    case EnvKind::random_mdp:
      return env::make_random_mdp(cfg.mdp.n_states, cfg.mdp.n_actions, cfg.mdp.mdp_seed, cfg.mdp.step_cap);
  }
  throw std::logic_error("make_environment: unknown kind");
}

train::TrainConfig train_config_for(const ExperimentConfig& cfg, const rl::StrategyConfig& strategy,
                                    std::uint64_t seed) {
  train::TrainConfig t = cfg.training;
  t.strategy = strategy;
  t.seed = seed;
  if (cfg.change) {
    auto target = cfg.change->target_angles ? quantum::bloch_to_state(*cfg.change->target_angles)
                                            : quantum::QuantumState::basis(3, cfg.change->target_level.value_or(0));
    t.target_change = train::TargetChange{cfg.change->episode, cfg.change->at_convergence, std::move(target)};
  }
  return t;
}

}  // namespace qsteer::config
