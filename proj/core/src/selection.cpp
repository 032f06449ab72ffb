// Copyright 2026 The Authors.
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

#include "sensel/selection.hpp"

#include <algorithm>
#include <climits>
#include <string>

namespace sensel {

namespace {

SelectionResult run_greedy(const ObjectiveEvaluator& eval, int r, bool accelerate) {
  const int ground = eval.ground_size();
  if (r > ground) {
    throw ConfigError("greedy step count r = " + std::to_string(r) +
                      " exceeds the ground set size " + std::to_string(ground));
  }

  const bool fast = accelerate && eval.supports_gain_acceleration();
  const HorizonModel* horizon = fast ? eval.fixed_horizon() : nullptr;
  const std::vector<double>* theta = fast ? &eval.config().theta : nullptr;

  SelectionResult result;
  result.objective_trajectory.push_back(eval.value(SensorSet{}));

  SensorSet selected;
  std::vector<char> in_set(ground, 0);

  // Current per-step covariances, maintained only on the accelerated path.
  std::vector<Matrix> y_steps;
  if (fast) {
    for (const InformationModel& step : horizon->steps)
      y_steps.push_back(evaluate_Y(step, selected));
  }

  for (int round = 0; round < r; ++round) {
    int best = -1;
    double best_value = 0.0;
    double best_gain = 0.0;
    for (int w = 0; w < ground; ++w) {
      if (in_set[w]) continue;
      if (fast) {
        double gain = 0.0;
        for (std::size_t k = 0; k < horizon->steps.size(); ++k) {
          const double weight = (*theta)[k];
          if (weight == 0.0) continue;
          gain += weight * incremental_trace_gain(horizon->steps[k], selected, w, y_steps[k]);
        }
        if (best < 0 || gain > best_gain) {
          best = w;
          best_gain = gain;
        }
      } else {
        const double value = eval.value(selected.with(w));
        if (best < 0 || value < best_value) {
          best = w;
          best_value = value;
        }
      }
    }

    selected = selected.with(best);
    in_set[best] = 1;
    result.chosen.push_back(best);
    result.objective_trajectory.push_back(eval.value(selected));
    if (fast) {
      for (std::size_t k = 0; k < horizon->steps.size(); ++k)
        y_steps[k] = evaluate_Y(horizon->steps[k], selected);
    }
  }

  result.gains.resize(r);
  for (int j = 0; j < r; ++j) {
    result.gains[j] = result.objective_trajectory[j] - result.objective_trajectory[j + 1];
  }
  return result;
}

SelectionResult baseline_from_order(const ObjectiveEvaluator& eval,
                                    const std::vector<int>& order) {
  SelectionResult result;
  result.chosen = order;
  result.objective_trajectory.push_back(eval.value(SensorSet{}));
  for (std::size_t j = 1; j <= order.size(); ++j) {
    result.objective_trajectory.push_back(
        eval.value(SensorSet::of({order.begin(), order.begin() + j})));
  }
  result.gains.resize(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) {
    result.gains[j] = result.objective_trajectory[j] - result.objective_trajectory[j + 1];
  }
  return result;
}

}  // namespace

SelectionResult greedy_select(const ObjectiveEvaluator& eval, int r,
                              const GreedyOptions& options) {
  return run_greedy(eval, r, options.use_gain_acceleration);
}

SelectionResult greedy_select(const LinearSystem& sys, const SelectionConfig& cfg,
                              const GreedyOptions& options) {
  const ObjectiveEvaluator eval(sys, cfg);
  return run_greedy(eval, cfg.steps(), options.use_gain_acceleration);
}

long long binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long c = 1;
  for (int i = 1; i <= k; ++i) {
    if (c > LLONG_MAX / (n - k + i)) return LLONG_MAX;  // saturate
    c = c * (n - k + i) / i;
  }
  return c;
}

std::pair<SensorSet, double> exhaustive_select(const ObjectiveEvaluator& eval, int s,
                                               long long cap) {
  const int ground = eval.ground_size();
  if (s < 1 || s > ground) {
    throw ConfigError("exhaustive_select requires 1 <= s <= ground set size");
  }
  const long long count = binomial_coefficient(ground, s);
  if (count > cap) {
    throw SizeError("exhaustive search over " + std::to_string(count) +
                    " subsets exceeds the cap of " + std::to_string(cap) +
                    "; use greedy selection instead");
  }

  std::vector<int> combo(s);
  for (int i = 0; i < s; ++i) combo[i] = i;

  SensorSet best_set;
  double best_value = 0.0;
  bool first = true;
  while (true) {
    const SensorSet candidate = SensorSet::of(combo);
    const double value = eval.value(candidate);
    if (first || value < best_value) {
      best_set = candidate;
      best_value = value;
      first = false;
    }
    // Advance to the next combination in lexicographic order.
    int i = s - 1;
    while (i >= 0 && combo[i] == ground - s + i) --i;
    if (i < 0) break;
    ++combo[i];
    for (int j = i + 1; j < s; ++j) combo[j] = combo[j - 1] + 1;
  }
  return {best_set, best_value};
}

std::pair<SensorSet, double> exhaustive_select(const LinearSystem& sys,
                                               const SelectionConfig& cfg) {
  const ObjectiveEvaluator eval(sys, cfg);
  return exhaustive_select(eval, cfg.s, cfg.exhaustive_cap);
}

double relative_suboptimality(double f_greedy, double f_opt) {
  if (f_opt >= -1e-15) {
    throw DegenerateInstanceError(
        "relative suboptimality undefined: optimal objective is not negative");
  }
  return (f_opt - f_greedy) / f_opt;
}

std::vector<int> sample_without_replacement(Rng& rng, int population, int k) {
  if (k < 0 || k > population) {
    throw PreconditionError("sample_without_replacement requires 0 <= k <= population");
  }
  std::vector<int> pool(population);
  for (int i = 0; i < population; ++i) pool[i] = i;
  // Partial Fisher-Yates: the first k entries are a uniform ordered sample.
  for (int i = 0; i < k; ++i) {
    const int j = i + rng.uniform_int(population - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

SelectionResult random_baseline(const LinearSystem& sys, const SelectionConfig& cfg,
                                std::uint64_t rng_seed) {
  const ObjectiveEvaluator eval(sys, cfg);
  if (cfg.s > eval.ground_size()) {
    throw ConfigError("budget s exceeds the number of sensors");
  }
  Rng rng(rng_seed);
  return baseline_from_order(eval, sample_without_replacement(rng, eval.ground_size(), cfg.s));
}

SelectionResult random_baseline(const LinearSystem& sys, const SelectionConfig& cfg,
                                std::uint64_t rng_seed,
                                const std::vector<std::vector<int>>& strata) {
  const ObjectiveEvaluator eval(sys, cfg);
  Rng rng(rng_seed);
  std::vector<int> order;
  std::vector<char> taken(eval.ground_size(), 0);
  for (std::size_t i = 0; i < strata.size(); ++i) {
    std::vector<int> available;
    for (int u : strata[i]) {
      if (u < 0 || u >= eval.ground_size()) {
        throw ConfigError("stratum " + std::to_string(i) + " references unknown sensor " +
                          std::to_string(u));
      }
      if (!taken[u]) available.push_back(u);
    }
    if (available.empty()) {
      throw ConfigError("stratum " + std::to_string(i) + " is empty or exhausted");
    }
    const int pick = available[rng.uniform_int(static_cast<int>(available.size()))];
    taken[pick] = 1;
    order.push_back(pick);
  }
  return baseline_from_order(eval, order);
}

}  // namespace sensel
