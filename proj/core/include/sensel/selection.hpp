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

#ifndef SENSEL_SELECTION_HPP
#define SENSEL_SELECTION_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "sensel/model.hpp"
#include "sensel/objective.hpp"
#include "sensel/rng.hpp"

namespace sensel {

struct SelectionResult {
  std::vector<int> chosen;                    // insertion order
  std::vector<double> objective_trajectory;   // value after 0 ... r insertions
  std::vector<double> gains;                  // trajectory[j] - trajectory[j+1]
};

struct GreedyOptions {
  /// Rank candidates through the low-rank trace-gain identity when the
  /// objective supports it. Disabling forces full re-evaluation everywhere.
  bool use_gain_acceleration = true;
};

/// Greedy minimization: r rounds, each inserting the candidate with the
/// lowest resulting objective, ties broken toward the lowest sensor index.
SelectionResult greedy_select(const LinearSystem& sys, const SelectionConfig& cfg,
                              const GreedyOptions& options = {});

/// Same algorithm running against an already-built evaluator.
SelectionResult greedy_select(const ObjectiveEvaluator& eval, int r,
                              const GreedyOptions& options = {});

/// Minimizing subset of size exactly s by full enumeration in lexicographic
/// order. C(|O|, s) must stay within cfg.exhaustive_cap.
std::pair<SensorSet, double> exhaustive_select(const LinearSystem& sys,
                                               const SelectionConfig& cfg);
std::pair<SensorSet, double> exhaustive_select(const ObjectiveEvaluator& eval, int s,
                                               long long cap);

/// nu* = (f_opt - f_greedy) / f_opt, in [0, 1] when greedy did not beat the
/// optimum. Requires a strictly negative f_opt.
double relative_suboptimality(double f_greedy, double f_opt);

/// Uniform random subset baseline: s distinct indices without replacement.
SelectionResult random_baseline(const LinearSystem& sys, const SelectionConfig& cfg,
                                std::uint64_t rng_seed);

/// Stratified baseline: one uniformly drawn, not-yet-chosen member per
/// stratum, in the given order. An exhausted stratum is a configuration error.
SelectionResult random_baseline(const LinearSystem& sys, const SelectionConfig& cfg,
                                std::uint64_t rng_seed,
                                const std::vector<std::vector<int>>& strata);

/// k distinct values from [0, population), uniform over unordered subsets.
std::vector<int> sample_without_replacement(Rng& rng, int population, int k);

long long binomial_coefficient(int n, int k);

}  // namespace sensel

#endif  // SENSEL_SELECTION_HPP
