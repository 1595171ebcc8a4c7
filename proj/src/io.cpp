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

#include "qsteer/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qsteer/quantum.hpp"

namespace qsteer::io {

std::string csv_real(double v) { return config::format_real(v); }

void write_run_csv(std::ostream& out, const std::vector<train::EpisodeRecord>& records) {
  out << "episode,steps,total_reward,terminal_fidelity,mean_entropy,truncated\n";
  for (const auto& r : records) {
    out << r.episode << ',' << r.steps << ',' << csv_real(r.total_reward) << ','
        << (r.terminal_fidelity ? csv_real(*r.terminal_fidelity) : std::string()) << ','
        << csv_real(r.mean_entropy) << ',' << (r.truncated ? "true" : "false") << '\n';
  }
}

void write_aggregate_csv(std::ostream& out, const std::vector<train::ComparisonRow>& rows) {
  out << "strategy,seed_count,median_convergence_episode,success_rate,median_cumulative_steps\n";
  for (const auto& r : rows) {
    out << r.strategy << ',' << r.seed_count << ','
        << (r.median_convergence_episode ? csv_real(*r.median_convergence_episode) : std::string()) << ','
        << csv_real(r.success_rate) << ',' << csv_real(r.median_cumulative_steps) << '\n';
  }
}

void write_trajectory_csv(std::ostream& out, const train::Trajectory& traj, config::EnvKind kind) {
  const std::size_t dim = traj.steps.empty() ? 0 : traj.steps.front().amplitudes.size();
  out << "step,action,reward,fidelity";
  for (std::size_t i = 1; i <= dim; ++i) out << ",re_c" << i << ",im_c" << i;
  if (kind == config::EnvKind::spin_half) out << ",theta,phi";
  if (kind == config::EnvKind::lambda)
    for (std::size_t i = 1; i <= dim; ++i) out << ",pop_" << i;
  out << '\n';
  for (const auto& s : traj.steps) {
    out << s.step << ',' << s.action << ',' << csv_real(s.reward) << ','
        << (s.fidelity ? csv_real(*s.fidelity) : std::string());
    for (const auto& c : s.amplitudes) out << ',' << csv_real(c.real()) << ',' << csv_real(c.imag());
    if (kind == config::EnvKind::spin_half || kind == config::EnvKind::lambda) {
      const quantum::QuantumState psi(linalg::ComplexVector(s.amplitudes));
      if (kind == config::EnvKind::spin_half) {
        const auto b = quantum::state_to_bloch(psi);
        out << ',' << csv_real(b.theta) << ',' << csv_real(b.phi);
      } else {
        for (double p : quantum::populations(psi)) out << ',' << csv_real(p);
      }
    }
    out << '\n';
  }
}

json config_echo_json(const config::ExperimentConfig& cfg) {
  json sections = json::object();
  for (const auto& [section, keys] : cfg.echo()) {
    json s = json::object();
    for (const auto& [k, v] : keys) s[k] = v;
    sections[section] = s;
  }
  return json{{"sections", sections}, {"overrides", cfg.overrides}};
}

std::string config_echo_to_ini(const json& echo) {
  std::string out;
  for (const auto& [section, keys] : echo.at("sections").items()) {
    if (!out.empty()) out += "\n";
    out += "[" + section + "]\n";
    for (const auto& [k, v] : keys.items()) out += k + " = " + v.get<std::string>() + "\n";
  }
  return out;
}

json run_summary_json(const config::ExperimentConfig& cfg, std::string_view strategy, std::uint64_t seed,
                      const train::RunResult& result, const train::Trajectory& final_rollout) {
  json j;
  j["strategy"] = strategy;
  j["seed"] = seed;
  j["episodes"] = result.records.size();
  j["convergence_episode"] = result.convergence_episode ? json(*result.convergence_episode) : json(nullptr);
  j["final_rollout"] = {{"steps", final_rollout.steps.size()},
                        {"success", final_rollout.success},
                        {"truncated", final_rollout.truncated},
                        {"fidelity", final_rollout.terminal_fidelity ? json(*final_rollout.terminal_fidelity)
                                                                     : json(nullptr)}};
  j["total_steps"] = result.total_steps;
  j["wall_time"] = result.wall_time;
  if (result.change_episode) {
    j["change_episode"] = *result.change_episode;
    j["reconvergence_episode"] =
        result.reconvergence_episode ? json(*result.reconvergence_episode) : json(nullptr);
  }
  j["config"] = config_echo_json(cfg);
  return j;
}

namespace {

json table_rows(std::span<const double> values, std::size_t n, std::size_t m) {
  json rows = json::array();
  for (std::size_t s = 0; s < n; ++s) {
    rows.push_back(std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(s * m),
                                       values.begin() + static_cast<std::ptrdiff_t>((s + 1) * m)));
  }
  return rows;
}

std::vector<double> flat_rows(const json& rows, std::size_t n, std::size_t m, const char* what) {
  if (!rows.is_array() || rows.size() != n) {
    throw std::runtime_error(std::string("artifact: ") + what + " must have " + std::to_string(n) + " rows");
  }
  std::vector<double> out;
  out.reserve(n * m);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != m) {
      throw std::runtime_error(std::string("artifact: every ") + what + " row must have " + std::to_string(m) +
                               " entries");
    }
    for (const auto& v : row) out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

json artifact_json(const config::ExperimentConfig& cfg, std::string_view strategy, std::uint64_t seed,
                   const rl::QTable& q, const rl::PolicyTable& policy) {
  return json{{"format", "qsteer-artifact"},
              {"version", 1},
              {"strategy", strategy},
              {"seed", seed},
              {"n_states", q.n_states()},
              {"n_actions", q.n_actions()},
              {"p_min", policy.p_min()},
              {"q", table_rows(q.values(), q.n_states(), q.n_actions())},
              {"policy", table_rows(policy.values(), policy.n_states(), policy.n_actions())},
              {"config", config_echo_json(cfg)}};
}

Artifact parse_artifact(const json& doc) {
  try {
    if (doc.value("format", "") != "qsteer-artifact") throw std::runtime_error("artifact: not a qsteer artifact");
    const auto n = doc.at("n_states").get<std::size_t>();
    const auto m = doc.at("n_actions").get<std::size_t>();
    Artifact a{doc.at("strategy").get<std::string>(), doc.at("seed").get<std::uint64_t>(), rl::QTable(n, m),
               rl::PolicyTable(n, m, doc.at("p_min").get<double>()), doc.at("config")};
    const auto qv = flat_rows(doc.at("q"), n, m, "q");
    std::copy(qv.begin(), qv.end(), a.q.values().begin());
    const auto pv = flat_rows(doc.at("policy"), n, m, "policy");
    for (std::size_t s = 0; s < n; ++s) {
      a.policy.load_row(s, std::span<const double>(pv.data() + s * m, m));
    }
    return a;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("artifact: malformed document (") + e.what() + ")");
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("artifact: ") + e.what());
  }
}

Artifact read_artifact(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open artifact '" + path.string() + "'");
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error("artifact '" + path.string() + "' is not valid JSON (" + e.what() + ")");
  }
  return parse_artifact(doc);
}

std::vector<std::size_t> read_pulse_sequence(std::istream& in, std::size_t n_actions) {
  std::vector<std::size_t> seq;
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto c = line.find('#'); c != std::string::npos) line.erase(c);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    const std::string_view tok(line.data() + b, e - b + 1);
    long long v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size()) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": '" + std::string(tok) +
                               "' is not an action index");
    }
    if (v < 0 || static_cast<unsigned long long>(v) >= n_actions) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": action " + std::string(tok) +
                               " outside [0, " + std::to_string(n_actions) + ")");
    }
    seq.push_back(static_cast<std::size_t>(v));
  }
  if (seq.empty()) throw std::runtime_error("pulse sequence is empty");
  return seq;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << contents;
  out.close();
  if (!out) throw std::runtime_error("error while writing '" + path.string() + "'");
}

}  // namespace qsteer::io
