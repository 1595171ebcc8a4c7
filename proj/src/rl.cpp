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

#include "qsteer/rl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsteer::rl {

namespace {

void check_index(std::size_t s, std::size_t n, const char* what) {
  if (s >= n) {
    throw std::out_of_range(std::string(what) + " index " + std::to_string(s) + " outside [0, " +
                            std::to_string(n) + ")");
  }
}

void check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be finite");
}

}  // namespace

QTable::QTable(std::size_t n_states, std::size_t n_actions)
    : n_states_(n_states), n_actions_(n_actions), values_(n_states * n_actions, 0.0) {
  if (n_states == 0 || n_actions == 0) throw std::invalid_argument("QTable: empty dimensions");
}

double QTable::max_value(std::size_t s) const {
  const auto r = row(s);
  return *std::max_element(r.begin(), r.end());
}

PolicyTable::PolicyTable(std::size_t n_states, std::size_t n_actions, double p_min)
    : n_states_(n_states),
      n_actions_(n_actions),
      p_min_(p_min),
      probs_(n_states * n_actions, n_actions == 0 ? 0.0 : 1.0 / static_cast<double>(n_actions)) {
  if (n_states == 0 || n_actions == 0) throw std::invalid_argument("PolicyTable: empty dimensions");
  if (!(p_min >= 0.0 && p_min * static_cast<double>(n_actions) < 1.0)) {
    throw std::invalid_argument("PolicyTable: probability floor must lie in [0, 1/n_actions)");
  }
}

void PolicyTable::set_row(std::size_t s, std::span<const double> raw) {
  check_index(s, n_states_, "state");
  if (raw.size() != n_actions_) throw std::invalid_argument("PolicyTable::set_row: wrong row length");
  const auto norm = normalize_row(raw, p_min_);
  std::copy(norm.begin(), norm.end(), probs_.begin() + static_cast<std::ptrdiff_t>(s * n_actions_));
}

void PolicyTable::load_row(std::size_t s, std::span<const double> row) {
  check_index(s, n_states_, "state");
  if (row.size() != n_actions_) throw std::invalid_argument("PolicyTable::load_row: wrong row length");
  double sum = 0.0;
  for (double x : row) {
    if (!(x >= p_min_ * (1.0 - 1e-12) && x <= 1.0)) {
      throw std::invalid_argument("PolicyTable::load_row: row " + std::to_string(s) + " has entry " +
                                  std::to_string(x) + " outside [p_min, 1]");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("PolicyTable::load_row: row " + std::to_string(s) + " sums to " + std::to_string(sum));
  }
  std::copy(row.begin(), row.end(), probs_.begin() + static_cast<std::ptrdiff_t>(s * n_actions_));
}

void StrategyConfig::validate() const {
  switch (kind) {
    case StrategyKind::epsilon_greedy:
      if (!(epsilon >= 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in [0, 1)");
      break;
    case StrategyKind::softmax:
      if (!(tau > 0.0) || !std::isfinite(tau)) throw std::invalid_argument("tau must be positive");
      break;
    case StrategyKind::probabilistic:
    case StrategyKind::fidelity_probabilistic:
      if (!(k >= 0.0) || !std::isfinite(k)) throw std::invalid_argument("k must be >= 0");
      break;
    case StrategyKind::greedy:
      break;
  }
}

std::string_view strategy_name(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::greedy: return "greedy";
    case StrategyKind::epsilon_greedy: return "ql";
    case StrategyKind::softmax: return "softmax";
    case StrategyKind::probabilistic: return "pql";
    case StrategyKind::fidelity_probabilistic: return "fpql";
  }
  return "unknown";
}

StrategyKind parse_strategy(std::string_view name) {
  if (name == "greedy") return StrategyKind::greedy;
  if (name == "ql" || name == "epsilon_greedy") return StrategyKind::epsilon_greedy;
  if (name == "softmax") return StrategyKind::softmax;
  if (name == "pql" || name == "probabilistic") return StrategyKind::probabilistic;
  if (name == "fpql" || name == "fidelity_probabilistic") return StrategyKind::fidelity_probabilistic;
  throw std::invalid_argument("unknown strategy '" + std::string(name) +
                              "' (expected greedy, ql, softmax, pql or fpql)");
}

void q_update(QTable& q, std::size_t s, std::size_t a, double r, std::size_t s_next, double alpha,
              double gamma, bool terminal) {
  check_index(s, q.n_states(), "state");
  check_index(s_next, q.n_states(), "next state");
  check_index(a, q.n_actions(), "action");
  check_finite(r, "reward");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("gamma must lie in [0, 1)");
  const double bootstrap = terminal ? 0.0 : q.max_value(s_next);
  q(s, a) = (1.0 - alpha) * q(s, a) + alpha * (r + gamma * bootstrap);
}

std::size_t greedy_action(const QTable& q, std::size_t s) {
  const auto r = q.row(s);
  return static_cast<std::size_t>(std::max_element(r.begin(), r.end()) - r.begin());
}

std::size_t epsilon_greedy_select(const QTable& q, std::size_t s, double epsilon, Rng& rng) {
  if (rng.uniform01() < epsilon) return rng.uniform_index(q.n_actions());
  return greedy_action(q, s);
}

std::size_t softmax_select(const QTable& q, std::size_t s, double tau, Rng& rng) {
  const auto r = q.row(s);
  const double top = *std::max_element(r.begin(), r.end());
  std::vector<double> w(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::exp((r[i] - top) / tau);
  double total = 0.0;
  for (double x : w) total += x;
  for (double& x : w) x /= total;
  return sample_row(w, rng);
}

std::size_t sample_row(std::span<const double> row, Rng& rng) {
  const double u = rng.uniform01();
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (row[i] <= 0.0) continue;
    last_positive = i;
    cum += row[i];
    if (u < cum) return i;
  }
  return last_positive;
}

std::size_t probabilistic_select(const PolicyTable& p, std::size_t s, Rng& rng) {
  check_index(s, p.n_states(), "state");
  const auto row = p.row(s);
  double sum = 0.0;
  for (double x : row) sum += x;
  if (std::abs(sum - 1.0) > 1e-6) {
    throw std::invalid_argument("probabilistic_select: row " + std::to_string(s) + " sums to " +
                                std::to_string(sum));
  }
  return sample_row(row, rng);
}

std::vector<double> normalize_row(std::span<const double> raw, double p_min) {
  const std::size_t m = raw.size();
  if (m == 0) throw std::invalid_argument("normalize_row: empty row");
  if (!(p_min >= 0.0 && p_min * static_cast<double>(m) < 1.0)) {
    throw std::invalid_argument("normalize_row: p_min must lie in [0, 1/m)");
  }
  std::vector<double> x(m);
  bool any_finite = false;
  for (std::size_t i = 0; i < m; ++i) {
    if (std::isfinite(raw[i])) {
      any_finite = true;
      x[i] = std::max(raw[i], p_min);
    } else {
      x[i] = p_min;
    }
  }
  if (!any_finite) throw std::invalid_argument("normalize_row: no finite entries");

  std::vector<bool> pinned(m, false);
  std::size_t n_pinned = 0;
  for (;;) {
    double free_sum = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (!pinned[i]) free_sum += x[i];
    const double mass = 1.0 - static_cast<double>(n_pinned) * p_min;
    if (free_sum <= 0.0) {
      // Only reachable with p_min == 0 and an all-non-positive row.
      std::vector<double> out(m, 0.0);
      for (std::size_t i = 0; i < m; ++i) out[i] = pinned[i] ? p_min : mass / static_cast<double>(m - n_pinned);
      return out;
    }
    const double scale = mass / free_sum;
    bool changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (!pinned[i] && x[i] * scale < p_min) {
        pinned[i] = true;
        ++n_pinned;
        changed = true;
      }
    }
    if (!changed) {
      std::vector<double> out(m);
      for (std::size_t i = 0; i < m; ++i) out[i] = pinned[i] ? p_min : x[i] * scale;
      return out;
    }
  }
}

void policy_update_pql(PolicyTable& p, std::size_t s, std::size_t a, double r, double max_q_next, double k) {
  policy_update_fpql(p, s, a, r, max_q_next, 0.0, k);
}

void policy_update_fpql(PolicyTable& p, std::size_t s, std::size_t a, double r, double max_q_next,
                        double fidelity_next, double k) {
  check_index(s, p.n_states(), "state");
  check_index(a, p.n_actions(), "action");
  check_finite(r, "reward");
  check_finite(max_q_next, "max_q_next");
  if (!(fidelity_next >= 0.0 && fidelity_next <= 1.0)) {
    throw std::invalid_argument("fidelity_next must lie in [0, 1]");
  }
  if (!(k >= 0.0) || !std::isfinite(k)) throw std::invalid_argument("k must be >= 0");
  if (k == 0.0) return;
  const auto current = p.row(s);
  std::vector<double> raw(current.begin(), current.end());
  raw[a] += k * (r + max_q_next + fidelity_next);
  p.set_row(s, raw);
}

double entropy_bits(std::span<const double> row) {
  double h = 0.0;
  for (double x : row)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

double exploration_entropy(const PolicyTable& p, std::size_t s) {
  check_index(s, p.n_states(), "state");
  return entropy_bits(p.row(s));
}

double mean_exploration_entropy(const PolicyTable& p) {
  double total = 0.0;
  for (std::size_t s = 0; s < p.n_states(); ++s) total += entropy_bits(p.row(s));
  return total / static_cast<double>(p.n_states());
}

std::vector<double> selection_distribution(const StrategyConfig& strategy, const QTable& q,
                                           const PolicyTable& p, std::size_t s) {
  const std::size_t m = q.n_actions();
  switch (strategy.kind) {
    case StrategyKind::greedy:
    case StrategyKind::epsilon_greedy: {
      const double eps = strategy.kind == StrategyKind::greedy ? 0.0 : strategy.epsilon;
      std::vector<double> out(m, eps / static_cast<double>(m));
      out[greedy_action(q, s)] += 1.0 - eps;
      return out;
    }
    case StrategyKind::softmax: {
      const auto r = q.row(s);
      const double top = *std::max_element(r.begin(), r.end());
      std::vector<double> out(m);
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i) total += out[i] = std::exp((r[i] - top) / strategy.tau);
      for (double& x : out) x /= total;
      return out;
    }
    case StrategyKind::probabilistic:
    case StrategyKind::fidelity_probabilistic: {
      const auto r = p.row(s);
      return {r.begin(), r.end()};
    }
  }
  return {};
}

double mean_selection_entropy(const StrategyConfig& strategy, const QTable& q, const PolicyTable& p) {
  if (strategy.uses_policy_table()) return mean_exploration_entropy(p);
  double total = 0.0;
  for (std::size_t s = 0; s < q.n_states(); ++s) total += entropy_bits(selection_distribution(strategy, q, p, s));
  return total / static_cast<double>(q.n_states());
}

std::size_t select_action(const StrategyConfig& strategy, const QTable& q, const PolicyTable& p,
                          std::size_t s, Rng& rng) {
  switch (strategy.kind) {
    case StrategyKind::greedy: return greedy_action(q, s);
    case StrategyKind::epsilon_greedy: return epsilon_greedy_select(q, s, strategy.epsilon, rng);
    case StrategyKind::softmax: return softmax_select(q, s, strategy.tau, rng);
    case StrategyKind::probabilistic:
    case StrategyKind::fidelity_probabilistic: return probabilistic_select(p, s, rng);
  }
  return 0;
}

}  // namespace qsteer::rl
