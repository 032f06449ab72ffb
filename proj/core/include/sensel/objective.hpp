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

#ifndef SENSEL_OBJECTIVE_HPP
#define SENSEL_OBJECTIVE_HPP

#include <optional>
#include <string>
#include <vector>

#include "sensel/covariance.hpp"
#include "sensel/matrix.hpp"
#include "sensel/model.hpp"

namespace sensel {

enum class Scalarization { trace, specnorm, logdet };

std::string to_string(Scalarization h);
std::string to_string(EstimationKind kind);

/// Everything that pins down one instance of the selection problem: which
/// scalar error measure to minimize, over which horizon, with which step
/// weights, and how many sensors may be picked.
struct SelectionConfig {
  Scalarization scalarization = Scalarization::trace;
  EstimationKind kind = EstimationKind::filtering;
  int m = 0;                  // first step of the horizon
  int N = 1;                  // horizon length
  std::vector<double> theta;  // N nonnegative weights, at least one positive
  int s = 1;                  // budget
  int r = 0;                  // greedy steps; 0 means r = s
  int smoothing_dim_cap = kSmoothingDimCap;
  long long exhaustive_cap = 200000;

  int steps() const { return r > 0 ? r : s; }
  void validate() const;  // throws ConfigError on violations
};

std::vector<double> weights_final(int n_steps);
std::vector<double> weights_average(int n_steps);
std::vector<double> weights_geometric(int n_steps, double rho);

struct ObjectiveValue {
  double value = 0.0;    // normalized: exactly 0 at the empty set
  double c_empty = 0.0;  // the normalization constant
};

/// Scalar error measure of a symmetric positive definite covariance:
/// trace (mean-square error), largest eigenvalue (worst-case error), or
/// log-determinant (confidence-ellipsoid volume, via eigenvalue logs).
double scalarize(Scalarization h, const Matrix& y);

/// Evaluates the normalized horizon objective
///   f(X) = sum_k theta_k h[Y_{m+k}(X)] - C_empty
/// for one (system, config) pair. C_empty is computed once on construction
/// through the same code path as every other evaluation, so f(empty) is
/// exactly zero. Instances are immutable after construction and safe to
/// share across threads.
class ObjectiveEvaluator {
 public:
  ObjectiveEvaluator(const LinearSystem& sys, const SelectionConfig& cfg);

  double value(const SensorSet& x) const;
  ObjectiveValue objective(const SensorSet& x) const { return {value(x), c_empty_}; }
  double c_empty() const { return c_empty_; }
  int ground_size() const { return static_cast<int>(v_all_.size()); }
  const SelectionConfig& config() const { return cfg_; }

  /// True when candidate gains can be ranked through the low-rank trace
  /// identity instead of full re-evaluation (trace objective over models
  /// that do not depend on the candidate set).
  bool supports_gain_acceleration() const;

  /// Fixed per-step models, present whenever the models are set-independent
  /// (smoothing always; filtering when m = 0 and N = 1).
  const HorizonModel* fixed_horizon() const {
    return fixed_horizon_ ? &*fixed_horizon_ : nullptr;
  }

 private:
  double raw_value(const SensorSet& x) const;
  double filtering_raw(const SensorSet& x) const;

  SelectionConfig cfg_;
  Matrix f_;
  Matrix r_w_;
  Matrix pi0_;
  std::vector<Matrix> v_all_;
  std::optional<HorizonModel> fixed_horizon_;
  double c_empty_ = 0.0;
};

/// Convenience wrapper constructing a fresh evaluator.
ObjectiveValue objective(const LinearSystem& sys, const SelectionConfig& cfg,
                         const SensorSet& x);

/// Normalized objective over explicitly given per-step models, evaluated
/// through the public evaluate_Y / scalarize operations. Useful for studying
/// hand-built instances and as an independent route next to
/// ObjectiveEvaluator's factorization-based paths.
class HorizonObjective {
 public:
  HorizonObjective(HorizonModel horizon, std::vector<double> theta, Scalarization h);

  double value(const SensorSet& x) const;
  int ground_size() const { return horizon_.steps.front().ground_size(); }
  const HorizonModel& horizon() const { return horizon_; }

 private:
  double raw_value(const SensorSet& x) const;

  HorizonModel horizon_;
  std::vector<double> theta_;
  Scalarization h_;
  double c_empty_ = 0.0;
};

/// Reference objective built on the modular scalarization -trace(information
/// sum), normalized to zero at the empty set. Per-sensor weights are rounded
/// to a common dyadic grid so that subset sums are exact in double precision
/// and the function is exactly modular.
double modular_reference_objective(const LinearSystem& sys, const SelectionConfig& cfg,
                                   const SensorSet& x);

}  // namespace sensel

#endif  // SENSEL_OBJECTIVE_HPP
